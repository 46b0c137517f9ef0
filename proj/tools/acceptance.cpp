// Acceptance driver: one PASS/FAIL line per criterion.
//
// All arithmetic is exact, so every comparison below has tolerance zero.
// The run sizes (mode windows, probe levels, boxes, draw counts) are pinned
// here and echoed in each line.

#include <CLI11.hpp>

#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "ffsl3/charflow.hpp"
#include "ffsl3/realize.hpp"
#include "ffsl3/relaxed.hpp"
#include "ffsl3/sectors.hpp"
#include "ffsl3/suites.hpp"

using namespace ffsl3;

namespace {

// exact arithmetic: residuals must vanish identically
constexpr int kTolerance = 0;

// pinned run sizes
constexpr long kAffineWindow = 2;       // AC1, AC2: (m, n) in [-2, 2]^2
constexpr int kWakimotoLevel = 3;       // AC1
constexpr int kPhi1Level = 2;           // AC2
constexpr int kBPLevel = 1;             // AC3
constexpr int kSugawaraLevel = 2;       // AC4
constexpr long kSingularGrid = 3;       // AC5: (a, b) in [0, 3]^2
constexpr long kBoxHalfWidth = 4;       // AC6: 9^3 box
constexpr int kFiniteMaxN = 6;          // AC6
constexpr int kCertMaxN = 6;            // AC7
constexpr int kDraws = 20;              // AC7
constexpr unsigned kSeed = 20240611;    // AC7
constexpr int kCharLevel = 3;           // AC8
constexpr int kFlowCharLevel = 2;       // AC8
constexpr int kFlowProbeLevel = 2;      // AC9
constexpr int kProbeLevel = 2;          // AC11

Context ctx{"k", "x", "y", "lambda1", "lambda2", "w", "Delta", "lambda", "m"};
Scalar K = ctx.var("k");

Scalar q(long long n, long long d = 1) { return Scalar::frac(n, d); }

struct Outcome {
    bool pass = true;
    std::string detail;
    void fail(const std::string& why) {
        pass = false;
        detail += (detail.empty() ? "" : "; ") + why;
    }
    void note(const std::string& s) { detail += (detail.empty() ? "" : "; ") + s; }
};

std::string first_failure(const Report& r) {
    for (auto& i : r.items)
        if (!i.pass) return r.check + ": " + i.name + " " + i.detail.substr(0, 200);
    return {};
}

void require(Outcome& o, const Report& r) {
    if (!r.pass()) o.fail(first_failure(r));
}

const CheckItem* find_item(const Report& r, const std::string& name) {
    for (auto& i : r.items)
        if (i.name == name) return &i;
    return nullptr;
}

Outcome ac1() {
    Outcome o;
    Report r = suite_affine("rho0", {K, kAffineWindow, kWakimotoLevel});
    require(o, r);
    if (r.items.size() != 36) o.fail("expected 36 pairs, got " + std::to_string(r.items.size()));
    o.note(std::to_string(r.items.size()) + " pairs, modes [-2,2]^2, vacuum probes level <= 3, symbolic k");
    return o;
}

Outcome ac2() {
    Outcome o;
    SuiteSpec s{K, kAffineWindow, kPhi1Level};
    Report vac = suite_affine("phi1", s);
    require(o, vac);
    s.twisted = true;
    s.l1 = ctx.var("lambda1");
    s.l2 = ctx.var("lambda2");
    Report tw = suite_affine("phi1", s);
    require(o, tw);
    o.note("36 pairs on vacuum and e^{-d1/2-d2/2+lambda1 c1+lambda2 c2} probes, level <= 2");
    return o;
}

Outcome ac3() {
    Outcome o;
    Report r = suite_bp_ope({K, 2, kBPLevel});
    require(o, r);
    auto* g = find_item(r, "G+ G- pole 3");
    auto* l = find_item(r, "L L pole 4");
    if (!g || g->detail != ((K + 1) * (2 * K + 3)).str()) o.fail("G+ G- third-order pole");
    if (!l || l->detail != (-(2 * K + 3) * (3 * K + 1) / (2 * (K + 3))).str()) o.fail("L L fourth-order pole");
    o.note(std::to_string(r.items.size()) + " structure functions; L L fourth-order pole " + (l ? l->detail : "?"));
    return o;
}

Outcome ac4() {
    Outcome o;
    Report r = suite_sugawara("rho0", {K, 2, kSugawaraLevel});
    require(o, r);
    o.note("c = " + (8 * K / (K + 3)).str() + ", eight currents primary of weight 1, level <= 2");
    return o;
}

Outcome ac5() {
    Outcome o;
    for (long a = 0; a <= kSingularGrid; ++a)
        for (long b = 0; b <= kSingularGrid; ++b) {
            KLWeights w = singular_weights(a, b, K);
            std::string ab = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
            if (!singular_residual(K, w.x, w.y, w.m1).is_zero()) o.fail("residual at m1 " + ab);
            if (!singular_residual(K, w.x, w.y, w.m2).is_zero()) o.fail("residual at m2 " + ab);
            auto [h1, h2] = singular_sl3_weight(K, w.x, w.y, w.m1);
            auto [g1, g2] = singular_sl3_weight(K, w.x, w.y, w.m2);
            if (h1 != Scalar(a) || h2 != Scalar(b)) o.fail("weight at m1 " + ab);
            if (g1 != K + 1 - Scalar(b) || g2 != K + 1 - Scalar(a)) o.fail("weight at m2 " + ab);
        }
    // the f3(1) coefficient as an identity in (x, y, m, k)
    Scalar x = ctx.var("x"), m = ctx.var("m"), y = ctx.var("y");
    Report r = verify_singular(K, x, y, m);
    require(o, r);
    auto* f3 = find_item(r, "f3(1)");
    if (!f3 || f3->detail != singular_residual(K, x, y, m).str()) o.fail("f3(1) coefficient");
    o.note("16 weights, both roots, sl3 weights a w1 + b w2 and (k+1-b) w1 + (k+1-a) w2");
    return o;
}

Outcome ac6() {
    Outcome o;
    InfiniteTopParams inf{K, ctx.var("w"), ctx.var("Delta"), ctx.var("lambda"), ctx.var("lambda1"),
                          ctx.var("lambda2")};
    require(o, check_representation(inf, kBoxHalfWidth));
    for (int N = 1; N <= kFiniteMaxN; ++N) {
        Scalar x = ctx.var("x");
        FiniteTopParams fin{K, x, finite_top_y(K, x, N), N, ctx.var("lambda1"), ctx.var("lambda2")};
        require(o, check_representation(fin, kBoxHalfWidth));
    }
    o.note("infinite table and finite table N = 1.." + std::to_string(kFiniteMaxN) +
           " (derived convention), 9^3 box, all parameters formal");
    return o;
}

Outcome ac7() {
    Outcome o;
    std::mt19937 rng(kSeed);
    std::uniform_int_distribution<int> num(-60, 60), den(1, 24);
    std::bernoulli_distribution violate(0.25);
    std::uniform_int_distribution<int> which(0, 2), shift(-3, 3);
    auto draw = [&] { return Scalar(Rational(num(rng), den(rng))); };
    int indeterminate = 0, mismatched = 0;
    for (int N = 1; N <= kCertMaxN; ++N) {
        int admissible = 0, tries = 0;
        while (admissible < kDraws && tries < 400) {
            ++tries;
            Scalar k = draw(), x = draw();
            if ((k + 3).is_zero()) continue;
            FiniteTopParams P{k, x, finite_top_y(k, x, N), N, draw(), draw()};
            if (violate(rng)) {
                // land on one of the excluded lines
                Scalar n(shift(rng));
                switch (which(rng)) {
                    case 0: P.l1 = q(1, 2) + n; break;
                    case 1: P.l2 = 2 * P.x - (2 * k + 3) / 6 + n; break;
                    default: P.l1 = (2 * k + 3) / 3 - P.x - P.l2 + n; break;
                }
            }
            auto h = hypothesis_check(P, N == 1 ? Hypotheses::ThmN1 : Hypotheses::LemmaCent);
            Certificate c = irreducibility_certificate(P, 0, 0);
            bool hyp = h.verdict == Verdict::True;
            if ((c.verdict == Verdict::Indeterminate) != !hyp) ++mismatched;
            if (!hyp) {
                ++indeterminate;
                continue;
            }
            ++admissible;
            if (c.verdict != Verdict::True)
                o.fail("N=" + std::to_string(N) + " " + verdict_str(c.verdict) + ": " + c.witness);
        }
        if (admissible < kDraws) o.fail("N=" + std::to_string(N) + ": only " + std::to_string(admissible) + " draws");
    }
    if (mismatched) o.fail(std::to_string(mismatched) + " draws where indeterminate != hypothesis violated");
    if (!indeterminate) o.fail("no violating draw exercised");
    o.note(std::to_string(kDraws) + " admissible draws per N = 1..6, all true; " + std::to_string(indeterminate) +
           " violating draws, all indeterminate");
    return o;
}

Outcome ac8() {
    Outcome o;
    Scalar l1 = ctx.var("lambda1"), l2 = ctx.var("lambda2");
    PiModuleDesc desc{-1, -1, l1, l2};
    QSeries brute = char_bruteforce(desc, K, kCharLevel, 1);
    QSeries closed = expand(char_pi(desc, K), kCharLevel + 8, 6);
    std::string why;
    size_t n = compare_on_common(brute, closed, kCharLevel + 1, &why);
    if (n != 9 || !why.empty()) o.fail("closed form vs trace: " + std::to_string(n) + " monomials " + why);
    // p4 coefficients on every populated z-monomial
    const std::vector<long> p4{1, 4, 14, 40};
    std::map<std::pair<long, long>, long> lowest;
    for (auto& [t, c] : brute.terms) {
        auto key = std::pair{t[1], t[2]};
        if (!lowest.count(key) || t[0] < lowest[key]) lowest[key] = t[0];
    }
    for (auto& [key, lo] : lowest)
        for (long d = 0; d <= kCharLevel; ++d)
            if (brute.coeff(lo + d, key.first, key.second) != Scalar(p4[d])) o.fail("coefficient pattern");
    QSeries base = char_bruteforce(desc, K, kFlowCharLevel, 2);
    for (auto [a, b] : {std::pair{1L, 0L}, std::pair{0L, 1L}, std::pair{1L, 1L}}) {
        FlowParams fp{a, b, 0};
        QSeries target = char_bruteforce(sf_module(fp, desc, K), K, kFlowCharLevel, 2);
        std::string w;
        if (compare_on_common(sf_char(fp, base, K), target, kFlowCharLevel + 1, &w) == 0 || !w.empty())
            o.fail("flow (" + std::to_string(a) + "," + std::to_string(b) + "): " + w);
    }
    o.note("9 z-monomials with 1, 4, 14, 40; flowed characters agree through level 2 (derived module shift)");
    return o;
}

Outcome ac9() {
    Outcome o;
    std::vector<FlowParams> ab{{1, 0, 0}, {0, 1, 0}, {1, 1, 0}, {-1, 2, 0}};
    int lines = 0;
    for (auto& fp : ab) {
        Report l = verify_flow_table(Flow::Lambda, fp, K);
        Report g = verify_flow_table(Flow::Gamma, fp, K);
        require(o, l);
        require(o, g);
        require(o, verify_flow_factorization(fp, K));
        lines += int(l.items.size() + g.items.size());
    }
    for (long l : {1L, -1L, 2L}) {
        Report s = verify_flow_table(Flow::Sigma, {0, 0, l}, K);
        require(o, s);
        lines += int(s.items.size());
    }
    Scalar l1 = ctx.var("lambda1"), l2 = ctx.var("lambda2");
    require(o, verify_lambda_modes({1, 0, 0}, {-1, -1, l1, l2}, K, kFlowProbeLevel, 2));
    require(o, verify_lambda_modes({0, 1, 0}, {-1, -1, l1, l2}, K, kFlowProbeLevel, 2));
    require(o, verify_lambda_modes({1, 1, 0}, {0, -1, l1, l2}, K, kFlowProbeLevel, 2));
    o.note(std::to_string(lines) + " table lines via Li's Delta (derived table), lambda as modes on level <= 2 "
                                   "probes, gamma = sigma^{b-2a} (x) lambda");
    return o;
}

Outcome ac10() {
    Outcome o;
    auto [t, w] = zk_screening_eigen(K);
    if (t != (4 * K + 9) / 3) o.fail("T_0 = " + t.str());
    if (w != -(K + 3) * (4 * K + 9) * (5 * K + 12) / 27) o.fail("W_0 = " + w.str());
    o.note("(" + t.str() + ", " + w.str() + "), eigenvector asserted");
    return o;
}

Outcome ac11() {
    Outcome o;
    for (Rational k : {Rational(-1, 2), Rational(-4, 3), Rational(-9, 4), Rational(-3)}) {
        auto c = vacuum_singular_probe(k, kProbeLevel);
        if (c.size() != 1) {
            std::string s = "k=" + k.str() + ": " + std::to_string(c.size() - 1) + " extra line(s)";
            if (candidates_are_casimir(k, 2)) s += " = the Casimir vector (central at critical level)";
            o.fail(s);
        }
    }
    if (!flags_e3_power(Rational(0), 1)) o.fail("k=0: e3(-1) 1 not flagged");
    if (!flags_e3_power(Rational(1), 2)) o.fail("k=1: e3(-1)^2 1 not flagged");
    if (o.pass) o.note("vacuum only at k = -1/2, -4/3, -9/4, -3; e3 powers flagged at k = 0, 1");
    else o.note("e3 pattern at k = 0, 1 checked");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance criteria"};
    std::vector<int> only;
    app.add_option("--only", only, "criterion numbers to run");
    CLI11_PARSE(app, argc, argv);
    const std::vector<std::function<Outcome()>> acs{ac1, ac2, ac3, ac4, ac5, ac6, ac7, ac8, ac9, ac10, ac11};
    std::set<int> pick(only.begin(), only.end());
    int failed = 0;
    std::cout << "tolerance: " << kTolerance << " (exact arithmetic)\n";
    for (size_t i = 0; i < acs.size(); ++i) {
        int n = int(i + 1);
        if (!pick.empty() && !pick.count(n)) continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = acs[i]();
        } catch (const std::exception& e) {
            o.fail(std::string("error: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::ostringstream line;
        line << "AC" << n << (n < 10 ? "  " : " ") << (o.pass ? "PASS" : "FAIL") << "  " << o.detail << "  ["
             << std::fixed << std::setprecision(1) << secs << " s]";
        std::cout << line.str() << std::endl;
        failed += !o.pass;
    }
    return failed ? 1 : 0;
}
