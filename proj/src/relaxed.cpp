#include "ffsl3/relaxed.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>

#include "ffsl3/realize.hpp"

namespace ffsl3 {

namespace {

Scalar q(long long n, long long d = 1) { return Scalar::frac(n, d); }

// 5(2k+3)/6 and 2(2k+3)/3
Scalar shift5(const Scalar& k) { return 5 * (2 * k + 3) / 6; }
Scalar shift2(const Scalar& k) { return 2 * (2 * k + 3) / 3; }

TopIndex at(const TopIndex& v, long dn, long dm, long dp) { return {v[0] + dn, v[1] + dm, v[2] + dp}; }

using Action = std::function<TopVector(int, const TopIndex&)>;

TopVector apply(const Action& act, int g, const TopVector& v) {
    TopVector out;
    for (auto& [idx, c] : v)
        for (auto& [j, d] : act(g, idx)) out.push_back({j, c * d});
    return normalize(std::move(out));
}

TopVector subtract(TopVector a, const TopVector& b) {
    for (auto& [j, c] : b) a.push_back({j, -c});
    return normalize(std::move(a));
}

std::string vec_str(const TopVector& v) {
    std::string s;
    for (auto& [j, c] : v) {
        if (!s.empty()) s += " + ";
        s += "(" + c.str() + ") [" + std::to_string(j[0]) + "," + std::to_string(j[1]) + "," + std::to_string(j[2]) + "]";
    }
    return s.empty() ? "0" : s;
}

Report check_action(const Action& act, const std::vector<TopIndex>& box, const std::string& name) {
    Report rep;
    rep.check = name;
    auto& nm = sl3::names();
    for (int a = 0; a < sl3::kDim; ++a)
        for (int b = a + 1; b < sl3::kDim; ++b) {
            auto br = sl3::bracket(a, b);
            bool ok = true;
            std::string detail = "checked " + std::to_string(box.size());
            for (auto& v : box) {
                TopVector one{{v, Scalar(1)}};
                TopVector lhs = subtract(apply(act, a, apply(act, b, one)), apply(act, b, apply(act, a, one)));
                TopVector rhs;
                for (auto& [l, c] : br)
                    for (auto& [j, d] : act(l, v)) rhs.push_back({j, Scalar(c) * d});
                TopVector res = subtract(lhs, normalize(std::move(rhs)));
                if (!res.empty()) {
                    ok = false;
                    detail = "at [" + std::to_string(v[0]) + "," + std::to_string(v[1]) + "," + std::to_string(v[2]) +
                             "]: " + vec_str(res);
                    break;
                }
            }
            rep.add("[" + nm[a] + "," + nm[b] + "]", ok, detail);
        }
    return rep;
}

// Verdict of "e + n != 0 for every integer n"
Verdict shift_clause(const Scalar& e) {
    if (!e.is_constant()) return Verdict::Indeterminate;
    return e.is_integer_constant() ? Verdict::False : Verdict::True;
}

struct ClauseList {
    HypothesisResult result;
    void add(const std::string& clause, Verdict v) {
        if (result.verdict == Verdict::False) return;
        if (v == Verdict::False) {
            result = {Verdict::False, clause};
        } else if (v == Verdict::Indeterminate && result.verdict == Verdict::True) {
            result = {Verdict::Indeterminate, clause};
        }
    }
};

void finite_clauses(ClauseList& cl, const FiniteTopParams& P) {
    cl.add("m - 1/2 != 0", shift_clause(P.l1 - q(1, 2)));
    // the derived table's f1, f2 coefficients (nbar = x + i + (2k+3)/3)
    cl.add("(2k+3)/3 - x - m - p != 0", shift_clause((2 * P.k + 3) / 3 - P.x - P.l1 - P.l2));
    cl.add("2x - p - (2k+3)/6 != 0", shift_clause(2 * P.x - P.l2 - (2 * P.k + 3) / 6));
}

}  // namespace

TopVector normalize(TopVector v) {
    std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.first < b.first; });
    TopVector out;
    for (auto& [j, c] : v) {
        if (!out.empty() && out.back().first == j)
            out.back().second += c;
        else
            out.push_back({j, c});
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](auto& t) { return t.second.is_zero(); }), out.end());
    return out;
}

Scalar finite_top_y(const Scalar& k, const Scalar& x, int N) {
    // h_N is linear in y with coefficient k + 3
    Scalar h0 = h_poly(k, Scalar(N), x, Scalar(0));
    return -h0 / (k + 3);
}

Scalar p_poly(const InfiniteTopParams& P, const Scalar& x) {
    const Scalar& k = P.k;
    return P.w - (k + 2) * (k + 3) * P.delta + ((k + 3) * P.delta - 2 * (k + 2) * (k + 2)) * x + 3 * (k + 2) * x * x -
           x * x * x;
}

Scalar h_poly(const Scalar& k, const Scalar& i, const Scalar& x, const Scalar& y) {
    return -i * i + k * i - 3 * x * i + 3 * i - 3 * x * x - k + 2 * k * x + 6 * x + k * y + 3 * y - 2;
}

TopVector act_infinite(int g, const TopIndex& v, const InfiniteTopParams& P) {
    const Scalar& k = P.k;
    Scalar n = Scalar(v[0]) + P.lambda, m = Scalar(v[1]) + P.l1, p = Scalar(v[2]) + P.l2;
    Scalar half = m - q(1, 2);
    Scalar s5 = 2 * n - p - shift5(k), s2 = shift2(k) - n - m - p;
    switch (g) {
        case 0: return normalize({{at(v, 0, -1, 1), half}});
        case 1: return {{at(v, 0, 1, 0), Scalar(1)}};
        case 2: return {{at(v, 0, 0, 1), Scalar(1)}};
        case 3: return normalize({{v, -2 * n - half + p + shift5(k)}});
        case 4: return normalize({{v, n + 2 * m + p - (8 * k + 9) / 6}});
        case 5: return normalize({{at(v, 1, 0, 0), Scalar(1)}, {at(v, 0, 1, -1), -s5}});
        case 6: return normalize({{at(v, -1, 0, -1), p_poly(P, n)}, {at(v, 0, -1, 0), half * s2}});
        case 7: {
            Scalar A = p_poly(P, n + 1) - p_poly(P, n) - s5 * s2;
            return normalize({{at(v, 0, 0, -1), A}, {at(v, 1, -1, 0), -half}, {at(v, -1, 1, -2), -p_poly(P, n)}});
        }
        default: throw std::invalid_argument("act_infinite: unknown generator");
    }
}

TopVector act_finite(int g, const TopIndex& v, const FiniteTopParams& P, FiniteConvention conv) {
    if (v[0] < 0 || v[0] >= P.N) throw std::out_of_range("act_finite: index i outside [0, N-1]");
    const Scalar& k = P.k;
    long i = v[0];
    // J(0) = x + i on w[i,...] while the infinite table has J(0) = nbar - (2k+3)/3,
    // so the derived table reads the infinite one at nbar = x + i + (2k+3)/3.
    Scalar xi = P.x + Scalar(i), m = Scalar(v[1]) + P.l1, p = Scalar(v[2]) + P.l2;
    if (conv == FiniteConvention::Derived) xi += (2 * k + 3) / 3;
    Scalar half = m - q(1, 2);
    switch (g) {
        case 0: return normalize({{at(v, 0, -1, 1), half}});
        case 1: return {{at(v, 0, 1, 0), Scalar(1)}};
        case 2: return {{at(v, 0, 0, 1), Scalar(1)}};
        case 3: return normalize({{v, -2 * xi - half + p + shift5(k)}});
        case 4: return normalize({{v, xi + 2 * m + p - (8 * k + 9) / 6}});
        case 5: {
            TopVector out{{at(v, 0, 1, -1), -(2 * xi - p - shift5(k))}};
            if (i + 1 < P.N) out.push_back({at(v, 1, 0, 0), Scalar(1)});
            return normalize(std::move(out));
        }
        case 6: {
            TopVector out{{at(v, 0, -1, 0), half * (shift2(k) - xi - m - p)}};
            if (i >= 1) {
                Scalar h = h_poly(k, Scalar(i), P.x, P.y);
                out.push_back({at(v, -1, 0, -1), conv == FiniteConvention::Derived ? Scalar(i) * h : h});
            }
            return normalize(std::move(out));
        }
        case 7: {
            Action act = [&](int a, const TopIndex& u) { return act_finite(a, u, P, conv); };
            TopVector one{{v, Scalar(1)}};
            return subtract(apply(act, 6, apply(act, 5, one)), apply(act, 5, apply(act, 6, one)));
        }
        default: throw std::invalid_argument("act_finite: unknown generator");
    }
}

Report check_representation(const InfiniteTopParams& P, long w) {
    std::vector<TopIndex> box;
    for (long n = -w; n <= w; ++n)
        for (long m = -w; m <= w; ++m)
            for (long p = -w; p <= w; ++p) box.push_back({n, m, p});
    return check_action([&](int g, const TopIndex& v) { return act_infinite(g, v, P); }, box,
                        "relaxed check-rep infinite");
}

Report check_representation(const FiniteTopParams& P, long w, FiniteConvention conv) {
    if ((h_poly(P.k, Scalar(P.N), P.x, P.y)).is_zero() == false)
        throw std::invalid_argument("check_representation: h_N(x,y) must vanish");
    std::vector<TopIndex> box;
    for (long i = 0; i < P.N; ++i)
        for (long m = -w; m <= w; ++m)
            for (long p = -w; p <= w; ++p) box.push_back({i, m, p});
    Report r = check_action([&](int g, const TopIndex& v) { return act_finite(g, v, P, conv); }, box,
                            std::string("relaxed check-rep finite ") +
                                (conv == FiniteConvention::Derived ? "derived" : "printed"));
    r.conventions["N"] = std::to_string(P.N);
    return r;
}

CentralizerPair centralizer_matrices(const FiniteTopParams& P, long m, long p, FiniteConvention conv) {
    size_t N = P.N;
    auto Z = [&](long i) { return TopIndex{i, m - i, p + i}; };
    Action act = [&](int a, const TopIndex& u) { return act_finite(a, u, P, conv); };
    CentralizerPair out{zero_matrix(N, N), zero_matrix(N, N)};
    for (size_t i = 0; i < N; ++i) {
        TopVector one{{Z(i), Scalar(1)}};
        TopVector u1 = apply(act, 0, apply(act, 5, one));
        TopVector u2 = apply(act, 1, apply(act, 6, one));
        for (auto [M, vec] : {std::pair{&out.U1, &u1}, std::pair{&out.U2, &u2}})
            for (auto& [j, c] : *vec) {
                long jj = j[0];
                if (j != Z(jj)) throw std::logic_error("centralizer left the weight space");
                (*M)[i][jj] = c;
            }
    }
    return out;
}

CentralizerPair centralizer_matrices_printed(const FiniteTopParams& P, long m, long p) {
    size_t N = P.N;
    const Scalar& k = P.k;
    Scalar mb = Scalar(m) + P.l1, pb = Scalar(p) + P.l2;
    CentralizerPair out{zero_matrix(N, N), zero_matrix(N, N)};
    for (size_t i = 0; i < N; ++i) {
        Scalar I(static_cast<long long>(i));
        if (i + 1 < N) {
            out.U1[i][i] = -(mb + q(1, 2)) * (2 * P.x + I - pb - shift5(k));
            out.U1[i][i + 1] = -(mb - q(1, 2));
        } else {
            out.U1[i][i] = -(mb - I) * (2 * P.x + I - pb - shift5(k));
        }
        out.U2[i][i] = (mb - I - q(1, 2)) * (shift2(k) - (P.x + I) - mb - pb);
        if (i >= 1) out.U2[i][i - 1] = h_poly(k, I, P.x, P.y);
    }
    return out;
}

std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::True: return "true";
        case Verdict::False: return "false";
        default: return "indeterminate";
    }
}

std::vector<long> integer_roots(const std::vector<Rational>& coeffs) {
    std::vector<Rational> c = coeffs;
    while (!c.empty() && c.back().is_zero()) c.pop_back();
    if (c.empty()) throw std::invalid_argument("integer_roots: zero polynomial");
    std::vector<long> roots;
    // strip the root at zero
    size_t z = 0;
    while (c[z].is_zero()) ++z;
    if (z > 0) roots.push_back(0);
    c.erase(c.begin(), c.begin() + z);
    if (c.size() == 1) return roots;
    // Cauchy bound
    Rational bound(0);
    for (size_t i = 0; i + 1 < c.size(); ++i) {
        Rational r = c[i] / c.back();
        if (r.sign() < 0) r = -r;
        if (r > bound) bound = r;
    }
    mpz_class B = (bound.num() / bound.den()) + 1;
    if (B > 10'000'000) throw std::runtime_error("integer_roots: root bound too large");
    long b = B.get_si();
    for (long n = -b; n <= b; ++n) {
        if (n == 0) continue;
        Rational v(0), N(n);
        for (size_t i = c.size(); i-- > 0;) v = v * N + c[i];
        if (v.is_zero()) roots.push_back(n);
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

HypothesisResult hypothesis_check(const InfiniteTopParams& P) {
    ClauseList cl;
    // p(n + lambda) as a polynomial in the integer n
    std::vector<Scalar> coef(4);
    {
        const Scalar& k = P.k;
        Scalar a0 = P.w - (k + 2) * (k + 3) * P.delta, a1 = (k + 3) * P.delta - 2 * (k + 2) * (k + 2),
               a2 = 3 * (k + 2), a3(-1);
        const Scalar& l = P.lambda;
        coef[0] = a0 + a1 * l + a2 * l * l + a3 * l * l * l;
        coef[1] = a1 + 2 * a2 * l + 3 * a3 * l * l;
        coef[2] = a2 + 3 * a3 * l;
        coef[3] = a3;
    }
    bool numeric = std::all_of(coef.begin(), coef.end(), [](const Scalar& s) { return s.is_constant(); });
    if (!numeric) {
        cl.add("p(n) != 0", Verdict::Indeterminate);
    } else {
        std::vector<Rational> rc;
        for (auto& s : coef) rc.push_back(s.constant_value());
        auto roots = integer_roots(rc);
        cl.add(roots.empty() ? "p(n) != 0" : "p(n) != 0 (root n = " + std::to_string(roots.front()) + ")",
               roots.empty() ? Verdict::True : Verdict::False);
    }
    cl.add("m - 1/2 != 0", shift_clause(P.l1 - q(1, 2)));
    cl.add("2n - p - 5(2k+3)/6 != 0", shift_clause(2 * P.lambda - P.l2 - shift5(P.k)));
    cl.add("2(2k+3)/3 - n - m - p != 0", shift_clause(shift2(P.k) - P.lambda - P.l1 - P.l2));
    return cl.result;
}

HypothesisResult hypothesis_check(const FiniteTopParams& P, Hypotheses which) {
    ClauseList cl;
    if (which == Hypotheses::ThmN1) {
        cl.add("h_1(x,y) = 0", h_poly(P.k, Scalar(1), P.x, P.y).is_zero() ? Verdict::True : Verdict::False);
    } else {
        cl.add("h_N(x,y) = 0", h_poly(P.k, Scalar(P.N), P.x, P.y).is_zero() ? Verdict::True : Verdict::False);
        for (int j = 1; j < P.N; ++j)
            cl.add("h_j(x,y) != 0 (j = " + std::to_string(j) + ")",
                   h_poly(P.k, Scalar(j), P.x, P.y).is_zero() ? Verdict::False : Verdict::True);
    }
    finite_clauses(cl, P);
    return cl.result;
}

Certificate irreducibility_certificate(const FiniteTopParams& P, long m, long p) {
    Certificate cert;
    HypothesisResult h = hypothesis_check(P, P.N == 1 ? Hypotheses::ThmN1 : Hypotheses::LemmaCent);
    if (h.verdict == Verdict::False) {
        cert.verdict = Verdict::Indeterminate;
        cert.witness = "hypothesis fails: " + h.clause;
        return cert;
    }
    auto [U1, U2] = centralizer_matrices(P, m, p);
    size_t N = P.N;
    auto flat = [&](const Matrix& a) {
        std::vector<Scalar> v;
        for (auto& r : a) v.insert(v.end(), r.begin(), r.end());
        return v;
    };
    // algebra generated by U1, U2: grow the span of words until it closes
    Matrix span;
    std::vector<Matrix> frontier{identity_matrix(N)};
    size_t dim = 0;
    while (!frontier.empty()) {
        std::vector<Matrix> next;
        for (auto& a : frontier) {
            Matrix trial = span;
            trial.push_back(flat(a));
            size_t r = rank(trial);
            if (r > dim) {
                dim = r;
                span = trial;
                next.push_back(a * U1);
                next.push_back(a * U2);
            }
        }
        frontier = std::move(next);
    }
    cert.algebra_dim = dim;
    // orbit of each Z_i: rows of the span matrices applied to e_i
    for (size_t i = 0; i < N; ++i) {
        Matrix orbit;
        for (auto& row : span) {
            std::vector<Scalar> v(N);
            // row is a flattened matrix A; Z_i maps to row i of A
            for (size_t j = 0; j < N; ++j) v[j] = row[i * N + j];
            orbit.push_back(v);
        }
        cert.orbit_dims.push_back(rank(orbit));
    }
    bool cyclic = std::all_of(cert.orbit_dims.begin(), cert.orbit_dims.end(), [&](size_t d) { return d == N; });
    bool full = dim == N * N;
    cert.verdict = cyclic && full ? Verdict::True : Verdict::False;
    cert.witness = "algebra dim " + std::to_string(dim) + " of " + std::to_string(N * N) +
                   (cyclic ? ", every Z_i cyclic" : ", some Z_i not cyclic");
    if (h.verdict == Verdict::Indeterminate) cert.witness += "; generic in: " + h.clause;
    return cert;
}

}  // namespace ffsl3
