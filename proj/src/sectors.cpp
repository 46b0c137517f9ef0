#include "ffsl3/sectors.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "ffsl3/linalg.hpp"
#include "ffsl3/realize.hpp"
#include "ffsl3/relaxed.hpp"

namespace ffsl3 {

namespace {

Scalar q(long long n, long long d = 1) { return Scalar::frac(n, d); }

using Partition = std::vector<int>;  // descending

// larger size first, then the given tie-break
bool bigger_by_length(const Partition& a, const Partition& b) {
    long sa = 0, sb = 0;
    for (int x : a) sa += x;
    for (int x : b) sb += x;
    if (sa != sb) return sa > sb;
    if (a.size() != b.size()) return a.size() > b.size();
    return a > b;
}

bool bigger_by_lex(const Partition& a, const Partition& b) {
    long sa = 0, sb = 0;
    for (int x : a) sa += x;
    for (int x : b) sb += x;
    if (sa != sb) return sa > sb;
    return a > b;
}

// c1, c2 parts rewritten with cbar = -c1 + c2 and c2: c1(-n) = c2(-n) - cbar(-n)
std::map<std::pair<Partition, Partition>, Scalar> cbar_expansion(const Fock& f, const FockState& s, int ic1, int ic2) {
    std::map<std::pair<Partition, Partition>, Scalar> out;
    for (auto& [id, c] : s.terms) {
        const BasisVector& b = f.basis(id);
        const Partition& alpha = b.heis[ic1];
        const Partition& beta = b.heis[ic2];
        size_t n = alpha.size();
        for (size_t mask = 0; mask < (size_t(1) << n); ++mask) {
            Partition cb, c2 = beta;
            int sign = 1;
            for (size_t i = 0; i < n; ++i) {
                if (mask >> i & 1) {
                    cb.push_back(alpha[i]);
                    sign = -sign;
                } else {
                    c2.push_back(alpha[i]);
                }
            }
            std::sort(cb.rbegin(), cb.rend());
            std::sort(c2.rbegin(), c2.rend());
            out[{cb, c2}] += Scalar(sign) * c;
        }
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

const Field& bhat_field(const BHatBasis& b, const std::string& g) {
    if (g == "e1") return b.e1;
    if (g == "e2") return b.e2;
    if (g == "e3") return b.e3;
    if (g == "hbar") return b.hbar;
    throw std::invalid_argument("unknown b-hat generator " + g);
}

}  // namespace

Exponent PiModuleDesc::sector(const Space& sp, const Scalar& s1, const Scalar& s2) const {
    return sp.exponent({{"d1", q(r1, 2)}, {"d2", q(r2, 2)}, {"c1", l1 + s1}, {"c2", l2 + s2}});
}

bool PiModuleDesc::contains(const Space& sp, const Exponent& e) const {
    auto coef = [&](const char* g) { return e.size() ? e.at(sp.heis_index(g)) : Scalar(0); };
    if (coef("d1") != q(r1, 2) || coef("d2") != q(r2, 2)) return false;
    Scalar s1 = coef("c1") - l1, s2 = coef("c2") - l2;
    if (!s1.is_constant() || !s2.is_constant()) return false;
    if (!s1.is_integer_constant()) return false;
    return third_lattice ? (3 * s2).is_integer_constant() : s2.is_integer_constant();
}

Space pi_space() {
    Space s;
    s.heis = {"c1", "d1", "c2", "d2"};
    s.gram.assign(4, std::vector<Scalar>(4));
    s.gram[0][1] = s.gram[1][0] = Scalar(2);
    s.gram[2][3] = s.gram[3][2] = Scalar(2);
    return s;
}

BHatBasis bhat_basis(const Space& sp, const Scalar& k) {
    Field c1 = current(sp, "c1"), d1 = current(sp, "d1"), c2 = current(sp, "c2"), d2 = current(sp, "d2");
    BHatBasis b;
    b.e1 = q(1, 2) * nord(c1 + d1, vertex(sp.exponent({{"c1", -1}, {"c2", 1}})));
    b.e2 = vertex(sp.gen("c1"));
    b.e3 = vertex(sp.gen("c2"));
    b.hbar = ((2 * k + 3) / 2) * c2 + q(3, 2) * sum({-c1, d1, d2});
    return b;
}

bool is_top(const Fock& f, const FockState& s) {
    for (auto& [id, c] : s.terms) {
        (void)c;
        const BasisVector& b = f.basis(id);
        for (auto& p : b.heis)
            if (!p.empty()) return false;
        for (auto& p : b.beta)
            if (!p.empty()) return false;
        for (auto& p : b.gamma)
            if (!p.empty()) return false;
        if (!b.bp.empty()) return false;
    }
    return true;
}

FockState replay(Engine& e, const BHatBasis& b, const std::vector<ModeLetter>& word, const FockState& s) {
    FockState v = s;
    for (auto& l : word) v = e.apply(bhat_field(b, l.gen), l.mode, v);
    return v;
}

std::string word_str(const std::vector<ModeLetter>& word) {
    if (word.empty()) return "1";
    std::string out;
    for (auto it = word.rbegin(); it != word.rend(); ++it) {
        if (!out.empty()) out += " ";
        out += it->gen + "(" + std::to_string(it->mode) + ")";
    }
    return out;
}

Reduction reduce_to_top(Engine& e, const BHatBasis& b, const FockState& s, const PiModuleDesc& desc) {
    if (s.is_zero()) throw std::invalid_argument("reduce_to_top: zero input");
    Fock& f = e.fock();
    const Space& sp = f.space();
    for (auto& [id, c] : s.terms) {
        (void)c;
        if (!desc.contains(sp, f.sector(f.basis(id).sector)))
            throw std::invalid_argument("reduce_to_top: state outside the module");
    }
    int ic1 = sp.heis_index("c1"), id1 = sp.heis_index("d1"), ic2 = sp.heis_index("c2"), id2 = sp.heis_index("d2");
    Exponent gc1 = sp.gen("c1"), gc2 = sp.gen("c2"), gcb = sp.exponent({{"c1", -1}, {"c2", 1}});
    Reduction r;
    FockState v = s;
    auto run = [&](const std::string& g, long mode) {
        r.word.push_back({g, mode});
        v = e.apply(bhat_field(b, g), mode, v);
        if (v.is_zero()) throw std::logic_error("reduce_to_top: reduction stalls at " + word_str(r.word));
    };
    // kill the d-partitions of one Pi(0) factor with the vertex operator e^{c}
    auto kill_d = [&](int idx, const Exponent& c, const std::string& g) {
        Partition best;
        long shift = 0;
        for (auto& [id, cf] : v.terms) {
            (void)cf;
            const Partition& p = f.basis(id).heis[idx];
            if (best.empty() || bigger_by_length(p, best)) {
                best = p;
                shift = f.integral_pairing(c, f.basis(id).sector);
            }
        }
        for (int m : best) run(g, m - 1 - shift);
    };
    for (int round = 0; round < 64; ++round) {
        if (is_top(f, v)) {
            r.top = v;
            return r;
        }
        bool has_d1 = false, has_d2 = false;
        for (auto& [id, c] : v.terms) {
            (void)c;
            has_d1 |= !f.basis(id).heis[id1].empty();
            has_d2 |= !f.basis(id).heis[id2].empty();
        }
        if (has_d1) {
            kill_d(id1, gc1, "e2");
            continue;
        }
        if (has_d2) {
            kill_d(id2, gc2, "e3");
            continue;
        }
        auto ex = cbar_expansion(f, v, ic1, ic2);
        Partition best2, bestb;
        for (auto& [key, c] : ex) {
            (void)c;
            if (!key.second.empty() && (best2.empty() || bigger_by_length(key.second, best2))) best2 = key.second;
            if (!key.first.empty() && (bestb.empty() || bigger_by_lex(key.first, bestb))) bestb = key.first;
        }
        if (!best2.empty()) {
            for (int m : best2) run("hbar", m);
            continue;
        }
        if (bestb.empty()) throw std::logic_error("reduce_to_top: state has parts outside the b-hat basis");
        long s0 = f.integral_pairing(gcb, f.basis(v.terms.front().first).sector);
        for (int m : bestb) run("e1", m - s0);
    }
    throw std::logic_error("reduce_to_top: reduction stalls after " + word_str(r.word));
}

KLWeights singular_weights(long a, long b, const Scalar& k) {
    KLWeights w;
    w.a = a;
    w.b = b;
    Scalar A(a), B(b);
    w.x = (B - A) / 3;
    w.y = ((B - A) * (B - A) - 3 * (A + B) * (2 * (k + 1) - A - B)) / (12 * (k + 3)) - (B - A) / 6;
    w.m1 = (A + 2 * B) / 3;
    w.m2 = (3 - 2 * A - B) / 3 + k;
    return w;
}

Scalar singular_residual(const Scalar& k, const Scalar& x, const Scalar& y, const Scalar& m) {
    return (k + 3) * (y + x / 2) - (k + 1) / 2 * (x - 2 * m) - x * (x - m) - m * m;
}

namespace {

struct SingularModel {
    Space sp;
    Fock f;
    Engine e;
    Dictionary d;
    SingularModel(const Scalar& k, const Scalar& x, const Scalar& y)
        : sp(bp_pi_space(x, y)), f(sp), e(f, bp_ope_table(k)), d(phi1(k, phi1_abstract_atoms(sp, k))) {}
};

}  // namespace

std::pair<Scalar, Scalar> singular_sl3_weight(const Scalar& k, const Scalar& x, const Scalar& y, const Scalar& m) {
    SingularModel M(k, x, y);
    FockState w = M.f.vacuum(M.sp.gen("c2", m));
    auto eig = [&](const char* g) {
        FockState r = M.e.apply(M.d.at(g), 0, w);
        Scalar c = r.coeff(w.terms[0].first);
        if (!(r == c * w)) throw std::logic_error("v (x) e^{m c2} is not a Cartan eigenvector");
        return c;
    };
    return {eig("h1"), eig("h2")};
}

Report verify_singular(const Scalar& k, const Scalar& x, const Scalar& y, const Scalar& m, int window) {
    SingularModel M(k, x, y);
    Report rep;
    rep.check = "verify-singular";
    rep.conventions["weight"] = "J(0) v = x v, (L + dJ/2)(0) v = y v";
    FockState w = M.f.vacuum(M.sp.gen("c2", m));
    auto zero_item = [&](const std::string& name, const Field& g, long n) {
        FockState r = M.e.apply(g, n, w);
        rep.add(name, r.is_zero(), r.is_zero() ? "0" : M.f.state_str(r));
    };
    for (const char* g : {"e1", "e2", "e3"}) zero_item(std::string(g) + "(0)", M.d.at(g), 0);
    Field hbar = M.d.at("h1") + 2 * M.d.at("h2");
    for (int n = 1; n <= window; ++n) zero_item("hbar(" + std::to_string(n) + ")", hbar, n);
    zero_item("f1(1)", M.d.at("f1"), 1);
    zero_item("f2(1)", M.d.at("f2"), 1);
    FockState r = M.e.apply(M.d.at("f3"), 1, w);
    FockState target = M.f.vacuum(M.sp.gen("c2", m - 1));
    Scalar res = singular_residual(k, x, y, m);
    Scalar got = target.is_zero() ? Scalar(0) : r.coeff(target.terms[0].first);
    rep.add("f3(1)", r == res * target, got.str());
    return rep;
}

long kl_top_dim(long a, long b, const Scalar& k, bool dual) {
    KLWeights w = singular_weights(a, b, k);
    Scalar x = dual ? -w.x : w.x, y = dual ? w.y + w.x : w.y;
    for (long i = 1; i <= 4096; ++i)
        if (h_poly(k, Scalar(i), x, y).is_zero()) return i;
    throw std::runtime_error("kl_top_dim: no vanishing h_i");
}

namespace {

struct VacuumModel {
    Scalar k;
    Space sp;
    Fock f;
    Engine e;
    Dictionary d;
    std::vector<std::vector<FockState>> image;  // basis of the image by conformal level

    explicit VacuumModel(const Rational& kv)
        : k(kv), sp(free_pi_space(k)), f(sp), e(f), d(phi1(k, phi1_free_atoms(sp, k))) {
        image.push_back({f.vacuum()});
    }

    std::vector<FockState> independent(const std::vector<FockState>& vs) {
        std::map<uint32_t, size_t> col;
        for (auto& v : vs)
            for (auto& [id, c] : v.terms) col.emplace(id, 0);
        std::vector<uint32_t> ids;
        for (auto& [id, i] : col) {
            i = ids.size();
            ids.push_back(id);
        }
        Matrix m = zero_matrix(vs.size(), ids.size());
        for (size_t r = 0; r < vs.size(); ++r)
            for (auto& [id, c] : vs[r].terms) m[r][col[id]] = c;
        auto piv = row_reduce(m);
        std::vector<FockState> out;
        for (size_t r = 0; r < piv.size(); ++r) {
            StateBuilder sb;
            for (size_t j = 0; j < ids.size(); ++j)
                if (!m[r][j].is_zero()) sb.add(ids[j], m[r][j]);
            out.push_back(sb.finish());
        }
        return out;
    }

    void grow(int level) {
        while ((int)image.size() <= level) {
            int n = (int)image.size();
            std::vector<FockState> cand;
            for (int j = 1; j <= n; ++j)
                for (auto& w : image[n - j])
                    for (auto& g : d.order) cand.push_back(e.apply(d.at(g), -j, w));
            image.push_back(independent(cand));
        }
    }

    std::vector<FockState> singular_at(int level) {
        grow(level);
        const auto& basis = image[level];
        std::vector<std::pair<const Field*, long>> raising{{&d.at("e1"), 0}, {&d.at("e2"), 0}, {&d.at("f3"), 1}};
        std::map<std::pair<size_t, uint32_t>, size_t> row;
        std::vector<std::vector<std::pair<size_t, Scalar>>> cols(basis.size());
        for (size_t i = 0; i < basis.size(); ++i)
            for (size_t r = 0; r < raising.size(); ++r)
                for (auto& [id, c] : e.apply(*raising[r].first, raising[r].second, basis[i]).terms) {
                    size_t at = row.emplace(std::make_pair(r, id), row.size()).first->second;
                    cols[i].push_back({at, c});
                }
        Matrix m = zero_matrix(row.size(), basis.size());
        for (size_t i = 0; i < basis.size(); ++i)
            for (auto& [at, c] : cols[i]) m[at][i] = c;
        std::vector<FockState> out;
        for (auto& v : nullspace(m, basis.size())) {
            StateBuilder sb;
            for (size_t i = 0; i < basis.size(); ++i)
                if (!v[i].is_zero()) sb.add(basis[i], v[i]);
            out.push_back(sb.finish());
        }
        return out;
    }

    FockState casimir() { return e.apply(casimir_from_currents(d), -1, f.vacuum()); }

    FockState e3_power(int l) {
        FockState v = f.vacuum();
        for (int i = 0; i < l; ++i) v = e.apply(d.at("e3"), -1, v);
        return v;
    }
};

bool in_span(VacuumModel& M, const std::vector<FockState>& span, const FockState& v) {
    std::vector<FockState> all = span;
    size_t r0 = M.independent(all).size();
    all.push_back(v);
    return M.independent(all).size() == r0;
}

}  // namespace

std::vector<SingularCandidate> vacuum_singular_probe(const Rational& k, int max_level) {
    VacuumModel M(k);
    std::vector<SingularCandidate> out;
    for (int l = 0; l <= max_level; ++l)
        for (auto& v : M.singular_at(l)) out.push_back({l, v});
    return out;
}

FockState e3_power_vacuum(const Rational& k, int l) { return VacuumModel(k).e3_power(l); }

bool flags_e3_power(const Rational& k, int l) {
    VacuumModel M(k);
    FockState v = M.e3_power(l);
    if (v.is_zero()) return false;
    return in_span(M, M.singular_at(l), v);
}

FockState casimir_vacuum(const Rational& k) { return VacuumModel(k).casimir(); }

bool candidates_are_casimir(const Rational& k, int level) {
    VacuumModel M(k);
    auto c = M.singular_at(level);
    FockState v = M.casimir();
    return c.size() == 1 && !v.is_zero() && in_span(M, c, v);
}

}  // namespace ffsl3
