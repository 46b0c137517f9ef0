#pragma once

#include <map>
#include <string>
#include <vector>

namespace ffsl3 {

struct CheckItem {
    std::string name;
    bool pass = true;
    std::string detail;  // residual or value, serialized exactly
};

struct Report {
    std::string check;
    std::vector<CheckItem> items;
    std::map<std::string, std::string> conventions;

    bool pass() const {
        for (auto& i : items)
            if (!i.pass) return false;
        return true;
    }
    void add(std::string name, bool ok, std::string detail = {}) {
        items.push_back({std::move(name), ok, std::move(detail)});
    }
    size_t failures() const {
        size_t n = 0;
        for (auto& i : items) n += !i.pass;
        return n;
    }
};

}  // namespace ffsl3
