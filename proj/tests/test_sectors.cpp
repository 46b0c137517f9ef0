#include <gtest/gtest.h>

#include "ffsl3/realize.hpp"
#include "ffsl3/relaxed.hpp"
#include "ffsl3/sectors.hpp"

using namespace ffsl3;

namespace {

Context ctx{"k", "lambda1", "lambda2", "x", "y", "m"};
Scalar k = ctx.var("k");
Scalar l1 = ctx.var("lambda1");
Scalar l2 = ctx.var("lambda2");

Scalar q(long long n, long long d = 1) { return Scalar::frac(n, d); }

struct PiFixture {
    Space sp = pi_space();
    Fock f{sp};
    Engine e{f};
    BHatBasis b = bhat_basis(sp, k);
};

FockState heis(Fock& f, const char* g, long n, const FockState& s) {
    FockState out;
    for (auto& [id, c] : s.terms) out = out + c * f.heis_mode(f.space().heis_index(g), n, id);
    return out;
}

}  // namespace

TEST(ReduceToTop, TopVectorGivesEmptyWord) {
    PiFixture F;
    PiModuleDesc desc{0, 0, l1, l2};
    FockState v = F.f.vacuum(desc.sector(F.sp));
    auto r = reduce_to_top(F.e, F.b, v, desc);
    EXPECT_TRUE(r.word.empty());
    EXPECT_EQ(r.top, v);
    EXPECT_EQ(word_str(r.word), "1");
}

TEST(ReduceToTop, D1PartKilledByE2) {
    PiFixture F;
    PiModuleDesc desc{0, 0, l1, l2};
    FockState v = heis(F.f, "d1", -1, F.f.vacuum(desc.sector(F.sp)));
    auto r = reduce_to_top(F.e, F.b, v, desc);
    ASSERT_EQ(r.word.size(), 1u);
    EXPECT_EQ(r.word[0].gen, "e2");
    FockState target = F.f.vacuum(desc.sector(F.sp, q(1), q(0)));
    ASSERT_EQ(r.top.size(), 1u);
    EXPECT_EQ(r.top.terms[0].first, target.terms[0].first);
}

TEST(ReduceToTop, CbarPartKilledByE1) {
    PiFixture F;
    PiModuleDesc desc{0, 0, l1, l2};
    FockState v0 = F.f.vacuum(desc.sector(F.sp));
    FockState v = heis(F.f, "c2", -1, v0) - heis(F.f, "c1", -1, v0);
    auto r = reduce_to_top(F.e, F.b, v, desc);
    ASSERT_EQ(r.word.size(), 1u);
    EXPECT_EQ(r.word[0].gen, "e1");
    FockState target = F.f.vacuum(desc.sector(F.sp, q(-1), q(1)));
    ASSERT_EQ(r.top.size(), 1u);
    EXPECT_EQ(r.top.terms[0].first, target.terms[0].first);
}

TEST(ReduceToTop, C2PartKilledByHbar) {
    PiFixture F;
    PiModuleDesc desc{0, 0, l1, l2};
    FockState v0 = F.f.vacuum(desc.sector(F.sp));
    auto r = reduce_to_top(F.e, F.b, heis(F.f, "c2", -2, v0), desc);
    ASSERT_EQ(r.word.size(), 1u);
    EXPECT_EQ(r.word[0].gen, "hbar");
    EXPECT_EQ(r.word[0].mode, 2);
    EXPECT_TRUE(is_top(F.f, r.top));
}

// every basis vector and one dense combination per level, in each covered sector
TEST(ReduceToTop, ReplayReproducesTop) {
    for (auto [r1, r2] : {std::pair{0, 0}, std::pair{-1, -1}, std::pair{0, -1}}) {
        PiFixture F;
        PiModuleDesc desc{r1, r2, l1, l2};
        Exponent sec = desc.sector(F.sp);
        for (int level = 1; level <= 2; ++level) {
            std::vector<FockState> inputs;
            FockState dense;
            long c = 1;
            for (uint32_t id : F.f.enumerate_basis(sec, level)) {
                if (F.f.level(id) != level) continue;
                inputs.push_back(F.f.basis_state(id));
                dense = dense + Scalar(c++) * F.f.basis_state(id);
            }
            // four free bosons: 4 states at level 1, 14 at level 2
            EXPECT_EQ(inputs.size(), level == 1 ? 4u : 14u);
            inputs.push_back(dense);
            for (auto& s : inputs) {
                auto red = reduce_to_top(F.e, F.b, s, desc);
                EXPECT_FALSE(red.top.is_zero());
                EXPECT_TRUE(is_top(F.f, red.top)) << F.f.state_str(s);
                EXPECT_EQ(replay(F.e, F.b, red.word, s), red.top) << word_str(red.word);
            }
        }
    }
}

TEST(ReduceToTop, RejectsZeroAndForeignStates) {
    PiFixture F;
    PiModuleDesc desc{0, 0, l1, l2};
    EXPECT_THROW(reduce_to_top(F.e, F.b, FockState{}, desc), std::invalid_argument);
    PiModuleDesc other{-1, -1, l1, l2};
    EXPECT_THROW(reduce_to_top(F.e, F.b, F.f.vacuum(other.sector(F.sp)), desc), std::invalid_argument);
}

TEST(Singular, WeightsAtSmallCases) {
    auto w = singular_weights(0, 0, k);
    EXPECT_EQ(w.x, q(0));
    EXPECT_EQ(w.y, q(0));
    EXPECT_EQ(w.m1, q(0));
    EXPECT_EQ(w.m2, k + 1);
    w = singular_weights(1, 0, k);
    EXPECT_EQ(w.x, q(-1, 3));
    EXPECT_EQ(w.m1, q(1, 3));
    EXPECT_EQ(w.m2, q(1, 3) + k);
    w = singular_weights(0, 1, k);
    EXPECT_EQ(w.x, q(1, 3));
    EXPECT_EQ(w.m1, q(2, 3));
}

TEST(Singular, ResidualVanishesOnGrid) {
    EXPECT_TRUE(singular_residual(k, q(0), q(0), q(0)).is_zero());
    EXPECT_TRUE(singular_residual(k, q(0), q(0), k + 1).is_zero());
    for (long a = 0; a <= 3; ++a)
        for (long b = 0; b <= 3; ++b) {
            auto w = singular_weights(a, b, k);
            EXPECT_TRUE(singular_residual(k, w.x, w.y, w.m1).is_zero()) << a << b;
            EXPECT_TRUE(singular_residual(k, w.x, w.y, w.m2).is_zero()) << a << b;
        }
}

TEST(Singular, VerifyAtVacuum) {
    auto r = verify_singular(k, q(0), q(0), q(0));
    for (auto& i : r.items) EXPECT_TRUE(i.pass) << i.name << " " << i.detail;
}

TEST(Singular, VerifySymbolic) {
    Scalar x = ctx.var("x"), y = ctx.var("y"), m = ctx.var("m");
    auto r = verify_singular(k, x, y, m);
    for (auto& i : r.items) EXPECT_TRUE(i.pass) << i.name << " " << i.detail;
    // expanded by hand from the residual
    Scalar expected = k * y + 3 * y + x + k * m + m - x * x + x * m - m * m;
    EXPECT_EQ(singular_residual(k, x, y, m), expected);
}

TEST(Singular, Sl3WeightsMatchDominantWeights) {
    Scalar x = ctx.var("x"), y = ctx.var("y"), m = ctx.var("m");
    auto [h1, h2] = singular_sl3_weight(k, x, y, m);
    EXPECT_EQ(h1, -2 * x + m);
    EXPECT_EQ(h2, x + m);
    for (long a = 0; a <= 3; ++a)
        for (long b = 0; b <= 3; ++b) {
            auto w = singular_weights(a, b, k);
            EXPECT_EQ(-2 * w.x + w.m1, Scalar(a));
            EXPECT_EQ(w.x + w.m1, Scalar(b));
            EXPECT_EQ(-2 * w.x + w.m2, k + 1 - Scalar(b));
            EXPECT_EQ(w.x + w.m2, k + 1 - Scalar(a));
        }
}

TEST(Singular, ZhuPolynomialFactorsAtKLWeights) {
    for (long a = 0; a <= 3; ++a)
        for (long b = 0; b <= 3; ++b) {
            auto w = singular_weights(a, b, k);
            for (long i = 0; i <= 6; ++i) {
                Scalar I(i);
                EXPECT_EQ(h_poly(k, I, w.x, w.y), (1 + Scalar(a) - I) * (Scalar(b) + I - k - 2)) << a << b << i;
                EXPECT_EQ(h_poly(k, I, -w.x, w.y + w.x), (1 + Scalar(b) - I) * (Scalar(a) + I - k - 2)) << a << b << i;
            }
        }
}

TEST(Singular, TopDimensions) {
    EXPECT_EQ(kl_top_dim(0, 0, k), 1);
    EXPECT_EQ(kl_top_dim(2, 5, k), 3);
    EXPECT_EQ(kl_top_dim(2, 5, k, true), 6);
    for (long a = 0; a <= 3; ++a)
        for (long b = 0; b <= 3; ++b) {
            EXPECT_EQ(kl_top_dim(a, b, k), a + 1);
            EXPECT_EQ(kl_top_dim(a, b, k, true), b + 1);
        }
}

TEST(VacuumProbe, GenericLevelHasOnlyVacuumThroughLevelOne) {
    auto c = vacuum_singular_probe(Rational(-1, 2), 1);
    ASSERT_EQ(c.size(), 1u);
    EXPECT_EQ(c[0].level, 0);
}

TEST(VacuumProbe, IntegrableLevelZeroFlagsE3) {
    auto c = vacuum_singular_probe(Rational(0), 1);
    ASSERT_EQ(c.size(), 2u);
    EXPECT_EQ(c[1].level, 1);
    EXPECT_TRUE(flags_e3_power(Rational(0), 1));
    EXPECT_FALSE(flags_e3_power(Rational(-1, 2), 1));
}
