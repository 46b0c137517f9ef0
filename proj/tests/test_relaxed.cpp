#include <gtest/gtest.h>

#include <random>

#include "ffsl3/realize.hpp"
#include "ffsl3/relaxed.hpp"

using namespace ffsl3;

namespace {

Context ctx{"k", "x", "lambda1", "lambda2", "w", "Delta", "lambda"};
Scalar k = ctx.var("k");
Scalar x = ctx.var("x");
Scalar l1 = ctx.var("lambda1");
Scalar l2 = ctx.var("lambda2");

Scalar q(long long n, long long d = 1) { return Scalar::frac(n, d); }

enum { E1, E2, E3, H1, H2, F1, F2, F3 };

InfiniteTopParams generic_infinite() { return {k, ctx.var("w"), ctx.var("Delta"), ctx.var("lambda"), l1, l2}; }
FiniteTopParams generic_finite(int N) { return {k, x, finite_top_y(k, x, N), N, l1, l2}; }

TopVector single(const TopIndex& i, const Scalar& c) { return {{i, c}}; }

void expect_pass(const Report& r) {
    EXPECT_GT(r.items.size(), 0u);
    for (auto& i : r.items) EXPECT_TRUE(i.pass) << r.check << ": " << i.name << " " << i.detail;
}

}  // namespace

TEST(InfiniteTable, SpotEntries) {
    auto P = generic_infinite();
    EXPECT_EQ(act_infinite(E2, {0, 0, 0}, P), single({0, 1, 0}, q(1)));
    TopIndex v{2, -1, 3};
    Scalar n = P.lambda + 2, m = l1 - 1, p = l2 + 3;
    EXPECT_EQ(act_infinite(H2, v, P), single(v, n + 2 * m + p - (8 * k + 9) / 6));
    TopVector f2 = normalize({{{1, -1, 2}, p_poly(P, n)},
                              {{2, -2, 3}, (m - q(1, 2)) * (2 * (2 * k + 3) / 3 - n - m - p)}});
    EXPECT_EQ(act_infinite(F2, v, P), f2);
    EXPECT_THROW(act_infinite(8, v, P), std::invalid_argument);
}

TEST(InfiniteTable, IsRepresentation) { expect_pass(check_representation(generic_infinite(), 2)); }

// h1, h2 are constant along v[n-i, m+i, p-i]
TEST(InfiniteTable, WeightConstantAlongDiagonal) {
    auto P = generic_infinite();
    for (int g : {H1, H2}) {
        Scalar w0 = act_infinite(g, {0, 0, 0}, P)[0].second;
        for (long i = -3; i <= 3; ++i) EXPECT_EQ(act_infinite(g, {-i, i, -i}, P)[0].second, w0) << g << " " << i;
    }
}

TEST(FiniteTable, BoundaryRules) {
    auto P = generic_finite(3);
    auto f1 = act_finite(F1, {2, 0, 0}, P);
    ASSERT_EQ(f1.size(), 1u);
    EXPECT_EQ(f1[0].first, (TopIndex{2, 1, -1}));
    auto f2 = act_finite(F2, {0, 0, 0}, P);
    ASSERT_EQ(f2.size(), 1u);
    EXPECT_EQ(f2[0].first, (TopIndex{0, -1, 0}));
    auto P1 = generic_finite(1);
    EXPECT_EQ(act_finite(F1, {0, 0, 0}, P1).size(), 1u);
    EXPECT_EQ(act_finite(F2, {0, 0, 0}, P1).size(), 1u);
    EXPECT_THROW(act_finite(F1, {3, 0, 0}, P), std::out_of_range);
}

TEST(FiniteTable, IsRepresentation) {
    for (int N = 1; N <= 3; ++N) expect_pass(check_representation(generic_finite(N), 2));
}

TEST(FiniteTable, LiteralTableFailsFromTwo) {
    expect_pass(check_representation(generic_finite(1), 2, FiniteConvention::Printed));
    for (int N = 2; N <= 3; ++N) {
        auto r = check_representation(generic_finite(N), 2, FiniteConvention::Printed);
        EXPECT_GT(r.failures(), 0u) << N;
    }
}

TEST(FiniteTable, RequiresTruncation) {
    FiniteTopParams P{k, x, q(0), 2, l1, l2};
    EXPECT_THROW(check_representation(P, 1), std::invalid_argument);
}

// The finite table is the infinite one at nbar = x + i + (2k+3)/3 away from
// the G- coefficient.
TEST(FiniteTable, MatchesInfiniteTableAfterShift) {
    const int N = 6;
    auto F = generic_finite(N);
    InfiniteTopParams P{k, ctx.var("w"), ctx.var("Delta"), x + (2 * k + 3) / 3, l1, l2};
    for (long i = 1; i + 1 < N; ++i)
        for (long m = -1; m <= 1; ++m)
            for (long p = -1; p <= 1; ++p) {
                TopIndex v{i, m, p};
                for (int g : {E1, E2, E3, H1, H2, F1}) EXPECT_EQ(act_finite(g, v, F), act_infinite(g, v, P)) << g;
                auto keep = [&](TopVector t) {
                    std::erase_if(t, [&](auto& e) { return e.first[0] != i; });
                    return t;
                };
                EXPECT_EQ(keep(act_finite(F2, v, F)), keep(act_infinite(F2, v, P)));
            }
}

// Zero modes of Phi1 on G+(0)^i v (x) e^{-d1/2 - d2/2 + (l1+m) c1 + (l2+p) c2}
TEST(FiniteTable, AgreesWithRealization) {
    const int N = 4;
    auto P = generic_finite(N);
    Space sp = bp_pi_space(x, P.y);
    Fock f(sp);
    Engine e(f, bp_ope_table(k));
    auto d = phi1(k, phi1_abstract_atoms(sp, k));
    auto state = [&](const TopIndex& t) {
        Exponent sec = sp.exponent(
            {{"d1", q(-1, 2)}, {"d2", q(-1, 2)}, {"c1", l1 + Scalar(t[1])}, {"c2", l2 + Scalar(t[2])}});
        FockState v = f.vacuum(sec);
        if (t[0] == 0) return v;
        return e.hw_evaluate(std::vector<BPLetter>(t[0], BPLetter{1, 0}), v);
    };
    auto& names = sl3::names();
    for (long i = 0; i + 1 < N; ++i)
        for (TopIndex t : {TopIndex{i, 0, 0}, TopIndex{i, 1, -1}}) {
            FockState w = state(t);
            for (int g = 0; g < sl3::kDim; ++g) {
                FockState expected;
                for (auto& [j, c] : act_finite(g, t, P)) expected = expected + c * state(j);
                EXPECT_EQ(e.apply(d.at(names[g]), 0, w), expected) << names[g] << " at i = " << i;
            }
        }
}

TEST(Centralizer, ShapeAndEntries) {
    const int N = 3;
    auto P = generic_finite(N);
    auto [U1, U2] = centralizer_matrices(P, 0, 0);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            if (j != i && j != i + 1) EXPECT_TRUE(U1[i][j].is_zero()) << i << j;
            if (j != i && j != i - 1) EXPECT_TRUE(U2[i][j].is_zero()) << i << j;
        }
    for (int i = 1; i < N; ++i) EXPECT_EQ(U2[i][i - 1], Scalar(i) * h_poly(k, Scalar(i), x, P.y));
    for (int i = 0; i + 1 < N; ++i) EXPECT_EQ(U1[i][i + 1], l1 - Scalar(i) - q(1, 2));
    auto D = centralizer_matrices_printed(P, 0, 0);
    for (int i = 1; i < N; ++i) EXPECT_EQ(D.U2[i][i - 1], h_poly(k, Scalar(i), x, P.y));
    for (int i = 0; i + 1 < N; ++i) EXPECT_EQ(D.U1[i][i + 1], q(1, 2) - l1);
    auto one = centralizer_matrices(generic_finite(1), 0, 0);
    EXPECT_EQ(one.U1.size(), 1u);
    EXPECT_EQ(one.U2.size(), 1u);
}

TEST(Hypotheses, HalfIntegerMFails) {
    auto P = generic_infinite();
    P.l1 = q(1, 2);
    auto h = hypothesis_check(P);
    EXPECT_EQ(h.verdict, Verdict::False);
    EXPECT_EQ(h.clause, "m - 1/2 != 0");
}

TEST(Hypotheses, GenericRationalPointPasses) {
    InfiniteTopParams P{q(1, 5), q(3, 7), q(2, 11), q(1, 13), q(1, 3), q(2, 17)};
    auto h = hypothesis_check(P);
    EXPECT_EQ(h.verdict, Verdict::True) << h.clause;
}

TEST(Hypotheses, IntegerShiftOfF1CoefficientFails) {
    // 2 lambda - lambda2 - 5(2k+3)/6 = -3 at k = 0, lambda = 1/4
    InfiniteTopParams P{q(0), q(3, 7), q(2, 11), q(1, 4), q(1, 3), q(1, 2) + 3 - q(5, 2)};
    auto h = hypothesis_check(P);
    EXPECT_EQ(h.verdict, Verdict::False);
    EXPECT_EQ(h.clause, "2n - p - 5(2k+3)/6 != 0");
}

TEST(Hypotheses, IntegerRootOfPFails) {
    // p(n) = w - 6 Delta + (3 Delta - 8) n + 6 n^2 - n^3 at k = -1; w chosen so p(2) = 0
    InfiniteTopParams P{q(-1), q(0), q(1, 3), q(0), q(1, 3), q(2, 17)};
    Scalar at2 = p_poly(P, q(2));
    P.w = -at2;
    EXPECT_TRUE(p_poly(P, q(2)).is_zero());
    auto h = hypothesis_check(P);
    EXPECT_EQ(h.verdict, Verdict::False);
    EXPECT_EQ(h.clause, "p(n) != 0 (root n = 2)");
}

TEST(Hypotheses, SymbolicIsIndeterminate) {
    EXPECT_EQ(hypothesis_check(generic_infinite()).verdict, Verdict::Indeterminate);
}

TEST(IntegerRoots, CubicAndRational) {
    // (n - 2)(n + 3)(2n - 1) = 2n^3 + n^2 - 13n + 6
    EXPECT_EQ(integer_roots({Rational(6), Rational(-13), Rational(1), Rational(2)}), (std::vector<long>{-3, 2}));
    EXPECT_TRUE(integer_roots({Rational(1, 2), Rational(0), Rational(1)}).empty());
}

TEST(Certificate, SymbolicTrueForSmallN) {
    for (int N = 1; N <= 3; ++N) {
        auto c = irreducibility_certificate(generic_finite(N), 0, 0);
        EXPECT_EQ(c.verdict, Verdict::True) << N << " " << c.witness;
        EXPECT_EQ(c.algebra_dim, size_t(N * N));
    }
}

TEST(Certificate, VanishingH1IsIndeterminate) {
    // h1 = h2 = 0 forces x = k/3
    Scalar kk = q(1, 7), xx = kk / 3;
    FiniteTopParams P{kk, xx, finite_top_y(kk, xx, 2), 2, q(1, 3), q(2, 5)};
    ASSERT_TRUE(h_poly(kk, q(1), xx, P.y).is_zero());
    auto c = irreducibility_certificate(P, 0, 0);
    EXPECT_EQ(c.verdict, Verdict::Indeterminate);
    EXPECT_NE(c.witness.find("h_j(x,y) != 0 (j = 1)"), std::string::npos) << c.witness;
}

// symbolic verdict true implies true at admissible rational points
TEST(Certificate, SpecializationsAgree) {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> num(-40, 40), den(1, 30);
    auto draw = [&] { return Scalar(Rational(num(rng), den(rng))); };
    for (int N = 1; N <= 4; ++N) {
        int tried = 0;
        while (tried < 5) {
            Scalar kk = draw(), xx = draw();
            if ((kk + 3).is_zero()) continue;
            FiniteTopParams P{kk, xx, finite_top_y(kk, xx, N), N, draw(), draw()};
            auto h = hypothesis_check(P, N == 1 ? Hypotheses::ThmN1 : Hypotheses::LemmaCent);
            if (h.verdict != Verdict::True) continue;
            ++tried;
            auto c = irreducibility_certificate(P, 0, 0);
            EXPECT_EQ(c.verdict, Verdict::True) << N << " " << c.witness;
        }
    }
}
