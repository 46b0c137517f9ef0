#include "ffsl3/fock.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ffsl3 {

// ---------------------------------------------------------------- Exponent

namespace {

Exponent widen(const Exponent& e, size_t n) {
    Exponent r = e;
    r.c.resize(std::max(n, e.c.size()));
    return r;
}

void trim(Exponent& e) {
    bool all_zero = true;
    for (auto& s : e.c)
        if (!s.is_zero()) all_zero = false;
    if (all_zero) e.c.clear();
}

}  // namespace

bool Exponent::is_zero() const {
    for (auto& s : c)
        if (!s.is_zero()) return false;
    return true;
}

const Scalar& Exponent::at(size_t i) const {
    static const Scalar zero;
    return i < c.size() ? c[i] : zero;
}

Exponent Exponent::operator+(const Exponent& o) const {
    Exponent r = widen(*this, o.c.size());
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
    trim(r);
    return r;
}

Exponent Exponent::operator-() const {
    Exponent r = *this;
    for (auto& s : r.c) s = -s;
    return r;
}

Exponent Exponent::operator-(const Exponent& o) const { return *this + (-o); }

Exponent operator*(const Scalar& s, const Exponent& e) {
    Exponent r = e;
    for (auto& x : r.c) x = s * x;
    trim(r);
    return r;
}

bool Exponent::operator==(const Exponent& o) const { return (*this - o).is_zero(); }

// ---------------------------------------------------------------- BP letters

namespace {
const int kBPWeight[4] = {1, 1, 2, 2};
const char* kBPName[4] = {"J", "G+", "G-", "L"};
}  // namespace

int bp_letter_degree(int gen, int mode) { return kBPWeight[gen] - 1 - mode; }

bool bp_is_creation(int gen, int mode) { return gen == 0 ? mode <= -1 : mode <= 0; }

// ---------------------------------------------------------------- Space

int Space::heis_index(const std::string& name) const {
    for (size_t i = 0; i < heis.size(); ++i)
        if (heis[i] == name) return (int)i;
    throw std::invalid_argument("unknown generator: " + name);
}

int Space::beta_index(const std::string& name) const {
    for (size_t i = 0; i < bg.size(); ++i)
        if (bg[i].first == name) return (int)i;
    return -1;
}

int Space::gamma_index(const std::string& name) const {
    for (size_t i = 0; i < bg.size(); ++i)
        if (bg[i].second == name) return (int)i;
    return -1;
}

Exponent Space::gen(const std::string& name, const Scalar& coeff) const {
    Exponent e;
    e.c.assign(heis.size(), Scalar());
    e.c[heis_index(name)] = coeff;
    trim(e);
    return e;
}

Exponent Space::exponent(const std::vector<std::pair<std::string, Scalar>>& terms) const {
    Exponent e;
    for (auto& [n, s] : terms) e = e + gen(n, s);
    return e;
}

Scalar Space::pairing(const Exponent& a, const Exponent& b) const {
    if (a.size() > heis.size() || b.size() > heis.size())
        throw std::invalid_argument("exponent from a different space");
    Scalar r;
    for (size_t i = 0; i < a.size(); ++i) {
        if (a.c[i].is_zero()) continue;
        Scalar row;
        for (size_t j = 0; j < b.size(); ++j)
            if (!b.c[j].is_zero() && !gram[i][j].is_zero()) row += gram[i][j] * b.c[j];
        if (!row.is_zero()) r += a.c[i] * row;
    }
    return r;
}

std::string Space::exponent_str(const Exponent& e) const {
    std::string out;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e.c[i].is_zero()) continue;
        if (!out.empty()) out += " + ";
        if (e.c[i] == Scalar(1))
            out += heis[i];
        else
            out += "(" + e.c[i].str() + ")*" + heis[i];
    }
    return out.empty() ? "0" : out;
}

// ---------------------------------------------------------------- FockState

namespace {

FockState combine(const FockState& a, const FockState& b, bool subtract) {
    FockState r;
    r.terms.reserve(a.terms.size() + b.terms.size());
    size_t i = 0, j = 0;
    while (i < a.terms.size() || j < b.terms.size()) {
        if (j == b.terms.size() || (i < a.terms.size() && a.terms[i].first < b.terms[j].first)) {
            r.terms.push_back(a.terms[i++]);
        } else if (i == a.terms.size() || b.terms[j].first < a.terms[i].first) {
            r.terms.emplace_back(b.terms[j].first, subtract ? -b.terms[j].second : b.terms[j].second);
            ++j;
        } else {
            Scalar s = subtract ? a.terms[i].second - b.terms[j].second : a.terms[i].second + b.terms[j].second;
            if (!s.is_zero()) r.terms.emplace_back(a.terms[i].first, std::move(s));
            ++i;
            ++j;
        }
    }
    return r;
}

}  // namespace

FockState FockState::operator+(const FockState& o) const { return combine(*this, o, false); }
FockState FockState::operator-(const FockState& o) const { return combine(*this, o, true); }

FockState operator*(const Scalar& s, const FockState& v) {
    FockState r;
    if (s.is_zero()) return r;
    r.terms.reserve(v.terms.size());
    for (auto& [id, c] : v.terms) r.terms.emplace_back(id, s * c);
    return r;
}

Scalar FockState::coeff(uint32_t id) const {
    auto it = std::lower_bound(terms.begin(), terms.end(), id,
                               [](const auto& t, uint32_t v) { return t.first < v; });
    if (it != terms.end() && it->first == id) return it->second;
    return Scalar();
}

void StateBuilder::add(uint32_t id, const Scalar& c) {
    if (c.is_zero()) return;
    acc_.emplace_back(id, c);
}

void StateBuilder::add(const FockState& s, const Scalar& c) {
    if (c.is_zero()) return;
    bool one = c == Scalar(1);
    for (auto& [id, v] : s.terms) acc_.emplace_back(id, one ? v : c * v);
}

FockState StateBuilder::finish() {
    FockState r;
    bool sorted = true;
    for (size_t i = 1; i < acc_.size() && sorted; ++i) sorted = acc_[i - 1].first < acc_[i].first;
    if (sorted) {
        r.terms.reserve(acc_.size());
        for (auto& t : acc_)
            if (!t.second.is_zero()) r.terms.push_back(std::move(t));
        acc_.clear();
        return r;
    }
    // sort light (id, position) keys; coefficients move once
    std::vector<std::pair<uint32_t, uint32_t>> order(acc_.size());
    for (size_t i = 0; i < acc_.size(); ++i) order[i] = {acc_[i].first, (uint32_t)i};
    std::sort(order.begin(), order.end());
    for (size_t i = 0; i < order.size();) {
        size_t j = i + 1;
        Scalar c = std::move(acc_[order[i].second].second);
        for (; j < order.size() && order[j].first == order[i].first; ++j) c += acc_[order[j].second].second;
        if (!c.is_zero()) r.terms.emplace_back(order[i].first, std::move(c));
        i = j;
    }
    acc_.clear();
    return r;
}

// ---------------------------------------------------------------- Fock

namespace {

void insert_part(std::vector<int>& parts, int n) {
    auto it = std::lower_bound(parts.begin(), parts.end(), n, std::greater<int>());
    parts.insert(it, n);
}

// removes one part equal to n; returns its multiplicity before removal
int remove_part(std::vector<int>& parts, int n) {
    auto lo = std::lower_bound(parts.begin(), parts.end(), n, std::greater<int>());
    auto hi = std::upper_bound(parts.begin(), parts.end(), n, std::greater<int>());
    int count = (int)(hi - lo);
    if (count) parts.erase(lo);
    return count;
}

void encode(std::string& key, int v) { key.append(reinterpret_cast<const char*>(&v), sizeof v); }

std::string basis_key(const BasisVector& b) {
    std::string key;
    encode(key, b.sector);
    for (auto* group : {&b.heis, &b.beta, &b.gamma})
        for (auto& parts : *group) {
            encode(key, (int)parts.size());
            for (int p : parts) encode(key, p);
        }
    encode(key, (int)b.bp.size());
    for (auto& l : b.bp) {
        encode(key, l.gen);
        encode(key, l.mode);
    }
    return key;
}

uint64_t exponent_hash(const Exponent& e) {
    uint64_t h = 1469598103934665603ull;
    for (size_t i = 0; i < e.size(); ++i) {
        if (e.c[i].is_zero()) continue;
        h ^= e.c[i].fingerprint() + 0x9e3779b97f4a7c15ull * (i + 1);
        h *= 1099511628211ull;
    }
    return h;
}

// all partitions of n into parts <= max_part, descending
void partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions(n - p, p, cur, out);
        cur.pop_back();
    }
}

}  // namespace

Fock::Fock(Space space) : space_(std::move(space)) {
    size_t n = space_.heis.size();
    if (space_.gram.size() != n) throw std::invalid_argument("Gram matrix has the wrong size");
    for (size_t i = 0; i < n; ++i) {
        if (space_.gram[i].size() != n) throw std::invalid_argument("Gram matrix has the wrong size");
        for (size_t j = 0; j < i; ++j)
            if (space_.gram[i][j] != space_.gram[j][i]) throw std::invalid_argument("Gram matrix is not symmetric");
    }
    sector_id(Exponent{});
}

int Fock::sector_id(const Exponent& e) {
    Exponent t = e;
    trim(t);
    uint64_t h = exponent_hash(t);
    auto [lo, hi] = sector_index_.equal_range(h);
    for (auto it = lo; it != hi; ++it)
        if (sectors_[it->second] == t) return it->second;
    int id = (int)sectors_.size();
    sectors_.push_back(t);
    sector_index_.emplace(h, id);
    return id;
}

uint32_t Fock::intern(const BasisVector& b) {
    std::string key = basis_key(b);
    auto it = basis_index_.find(key);
    if (it != basis_index_.end()) return it->second;
    uint32_t id = (uint32_t)basis_.size();
    int level = 0, weight = 0;
    for (auto& parts : b.heis)
        for (int p : parts) level += p, weight += p;
    for (auto& parts : b.beta)
        for (int p : parts) level += p, weight += p;
    for (auto& parts : b.gamma)
        for (int p : parts) level += p, weight += p - 1;
    for (auto& l : b.bp) {
        level += bp_letter_degree(l.gen, l.mode);
        weight += bp_letter_degree(l.gen, l.mode);
    }
    basis_.push_back(b);
    level_.push_back(level);
    weight_.push_back(weight);
    basis_index_.emplace(std::move(key), id);
    return id;
}

FockState Fock::vacuum(const Exponent& sector) {
    BasisVector b;
    b.sector = sector_id(sector);
    b.heis.assign(space_.heis.size(), {});
    b.beta.assign(space_.bg.size(), {});
    b.gamma.assign(space_.bg.size(), {});
    return basis_state(intern(b));
}

FockState Fock::basis_state(uint32_t id) const {
    FockState s;
    s.terms.emplace_back(id, Scalar(1));
    return s;
}

long Fock::integral_pairing(const Exponent& mu, int sector) {
    Scalar p = space_.pairing(mu, sectors_.at(sector));
    if (!p.is_integer_constant())
        throw std::domain_error("non-integral pairing <" + space_.exponent_str(mu) + ", " +
                                space_.exponent_str(sectors_.at(sector)) + "> = " + p.str());
    return p.constant_value().to_long();
}

int Fock::cocycle_sign(const Exponent& mu, int sector) {
    if (space_.cocycle.empty()) return 1;
    const Exponent& lam = sectors_.at(sector);
    Scalar s;
    for (size_t a = 0; a < mu.size(); ++a)
        for (size_t b = 0; b < lam.size(); ++b) {
            int c = space_.cocycle[a][b];
            if (c && !mu.c[a].is_zero() && !lam.c[b].is_zero()) s += Scalar(c) * mu.c[a] * lam.c[b];
        }
    if (!s.is_integer_constant()) throw std::domain_error("cocycle exponent is not an integer: " + s.str());
    return s.constant_value().to_long() % 2 == 0 ? 1 : -1;
}

FockState Fock::heis_mode(int g, long n, uint32_t id) {
    Exponent h;
    h.c.assign(space_.heis.size(), Scalar());
    h.c[g] = Scalar(1);
    return heis_mode(h, n, id);
}

FockState Fock::heis_mode(const Exponent& h, long n, uint32_t id) {
    const BasisVector& b = basis_[id];
    FockState out;
    if (n == 0) {
        Scalar p = space_.pairing(h, sectors_[b.sector]);
        if (!p.is_zero()) out.terms.emplace_back(id, p);
        return out;
    }
    StateBuilder acc;
    if (n < 0) {
        for (size_t g = 0; g < h.size(); ++g) {
            if (h.c[g].is_zero()) continue;
            BasisVector nb = basis_[id];
            insert_part(nb.heis[g], (int)-n);
            acc.add(intern(nb), h.c[g]);
        }
        return acc.finish();
    }
    for (size_t g = 0; g < space_.heis.size(); ++g) {
        const auto& parts = b.heis[g];
        if (!std::binary_search(parts.begin(), parts.end(), (int)n, std::greater<int>())) continue;
        Scalar p;
        for (size_t i = 0; i < h.size(); ++i)
            if (!h.c[i].is_zero() && !space_.gram[i][g].is_zero()) p += h.c[i] * space_.gram[i][g];
        if (p.is_zero()) continue;
        BasisVector nb = b;
        int count = remove_part(nb.heis[g], (int)n);
        acc.add(intern(nb), p * Scalar((long long)n * count));
    }
    return acc.finish();
}

FockState Fock::beta_mode(int pair, long n, uint32_t id) {
    BasisVector nb = basis_[id];
    FockState out;
    if (n < 0) {
        insert_part(nb.beta[pair], (int)-n);
        out.terms.emplace_back(intern(nb), Scalar(1));
        return out;
    }
    int count = remove_part(nb.gamma[pair], (int)n + 1);
    if (count) out.terms.emplace_back(intern(nb), Scalar((long long)space_.bg_sign * count));
    return out;
}

FockState Fock::gamma_mode(int pair, long n, uint32_t id) {
    BasisVector nb = basis_[id];
    FockState out;
    if (n < 0) {
        insert_part(nb.gamma[pair], (int)-n);
        out.terms.emplace_back(intern(nb), Scalar(1));
        return out;
    }
    int count = remove_part(nb.beta[pair], (int)n + 1);
    if (count) out.terms.emplace_back(intern(nb), Scalar(-(long long)space_.bg_sign * count));
    return out;
}

FockState Fock::apply_linear(const FockState& s, const std::function<FockState(uint32_t)>& f) {
    StateBuilder acc;
    for (auto& [id, c] : s.terms) acc.add(f(id), c);
    return acc.finish();
}

FockState Fock::vertex_mode(const Exponent& mu, long n, uint32_t id) {
    int sec = basis_[id].sector;
    long p = integral_pairing(mu, sec);
    int sign = cocycle_sign(mu, sec);
    int heis_level = 0;
    for (auto& parts : basis_[id].heis)
        for (int q : parts) heis_level += q;
    long j0 = -n - 1 - p;
    if (j0 + heis_level < 0) return {};

    int mu_id = sector_id(mu);
    const std::vector<FockState>& S = annihilation_series(mu, mu_id, id, heis_level);
    StateBuilder acc;
    for (int i = 0; i <= heis_level; ++i) {
        long j = j0 + i;
        if (j < 0 || S[i].is_zero()) continue;
        for (auto& [b, c] : S[i].terms) acc.add(creation_series(mu, mu_id, b, j), c);
    }
    FockState same = acc.finish();
    if (same.is_zero()) return same;
    int target = sector_id(sectors_[sec] + mu);
    StateBuilder out;
    for (auto& [b, c] : same.terms) {
        BasisVector nb = basis_[b];
        nb.sector = target;
        out.add(intern(nb), sign == 1 ? c : -c);
    }
    return out.finish();
}

// i S_i = -sum_m mu_(m) S_{i-m}
const std::vector<FockState>& Fock::annihilation_series(const Exponent& mu, int mu_id, uint32_t id, int top) {
    uint64_t key = (uint64_t)mu_id << 32 | id;
    auto it = ann_memo_.find(key);
    if (it != ann_memo_.end()) return it->second;
    std::vector<FockState> S(top + 1);
    S[0] = basis_state(id);
    for (int i = 1; i <= top; ++i) {
        StateBuilder acc;
        for (int m = 1; m <= i; ++m)
            for (auto& [b, c] : S[i - m].terms) acc.add(heis_mode(mu, m, b), c);
        S[i] = Scalar::frac(-1, i) * acc.finish();
    }
    return ann_memo_.emplace(key, std::move(S)).first->second;
}

// j T_j = sum_m mu_(-m) T_{j-m}, T_0 = the basis vector
const FockState& Fock::creation_series(const Exponent& mu, int mu_id, uint32_t id, long j) {
    uint64_t key = (uint64_t)mu_id << 32 | id;
    auto& T = cre_memo_[key];
    if (T.empty()) T.push_back(basis_state(id));
    while ((long)T.size() <= j) {
        long t = (long)T.size();
        StateBuilder acc;
        for (long m = 1; m <= t; ++m)
            for (auto& [b, c] : T[t - m].terms) acc.add(heis_mode(mu, -m, b), c);
        FockState next = Scalar::frac(1, t) * acc.finish();
        T.push_back(std::move(next));
    }
    return T[j];
}

std::vector<uint32_t> Fock::enumerate_basis(const Exponent& sector, int max_level) {
    if (max_level < 0) throw std::invalid_argument("max_level must be nonnegative");
    int sec = sector_id(sector);
    size_t nh = space_.heis.size(), nb = space_.bg.size();
    size_t slots = nh + 2 * nb;
    std::vector<std::vector<std::vector<int>>> parts_of(max_level + 1);
    for (int t = 0; t <= max_level; ++t) {
        std::vector<int> cur;
        partitions(t, t, cur, parts_of[t]);
    }
    std::vector<uint32_t> out;
    BasisVector b;
    b.sector = sec;
    b.heis.assign(nh, {});
    b.beta.assign(nb, {});
    b.gamma.assign(nb, {});
    auto slot_ref = [&](size_t s) -> std::vector<int>& {
        if (s < nh) return b.heis[s];
        if (s < nh + nb) return b.beta[s - nh];
        return b.gamma[s - nh - nb];
    };
    std::function<void(size_t, int)> rec = [&](size_t s, int remaining) {
        if (s == slots) {
            if (remaining == 0) out.push_back(intern(b));
            return;
        }
        for (int t = remaining; t >= 0; --t) {
            if (s + 1 == slots && t != remaining) continue;
            for (auto& p : parts_of[t]) {
                slot_ref(s) = p;
                rec(s + 1, remaining - t);
            }
        }
        slot_ref(s).clear();
    };
    for (int level = 0; level <= max_level; ++level) {
        if (slots == 0) {
            if (level == 0) out.push_back(intern(b));
            continue;
        }
        rec(0, level);
    }
    return out;
}

std::string Fock::basis_str(uint32_t id) const {
    const BasisVector& b = basis_[id];
    std::ostringstream os;
    os << "e^{" << space_.exponent_str(sectors_[b.sector]) << "}";
    auto group = [&](const std::string& name, const std::vector<int>& parts) {
        if (parts.empty()) return;
        os << " ; " << name << ":[";
        for (size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
        os << "]";
    };
    for (size_t g = 0; g < b.heis.size(); ++g) group(space_.heis[g], b.heis[g]);
    for (size_t p = 0; p < b.beta.size(); ++p) group(space_.bg[p].first, b.beta[p]);
    for (size_t p = 0; p < b.gamma.size(); ++p) group(space_.bg[p].second, b.gamma[p]);
    if (!b.bp.empty()) {
        os << " ; bp:[";
        for (size_t i = 0; i < b.bp.size(); ++i)
            os << (i ? "," : "") << kBPName[b.bp[i].gen] << "(" << b.bp[i].mode << ")";
        os << "]";
    }
    return os.str();
}

std::string Fock::state_str(const FockState& s) const {
    if (s.is_zero()) return "0";
    std::string out;
    for (auto& [id, c] : s.terms) {
        if (!out.empty()) out += " + ";
        out += "(" + c.str() + ") [" + basis_str(id) + "]";
    }
    return out;
}

FockState Fock::truncate(const FockState& s, int max_level) const {
    FockState r;
    for (auto& t : s.terms)
        if (level_[t.first] <= max_level) r.terms.push_back(t);
    return r;
}

}  // namespace ffsl3
