#include <gtest/gtest.h>

#include "ffsl3/realize.hpp"

using namespace ffsl3;

namespace {

Context ctx{"k", "lambda1", "lambda2", "x", "y"};
Scalar k = ctx.var("k");
Scalar l1 = ctx.var("lambda1");
Scalar l2 = ctx.var("lambda2");

using M3 = std::array<std::array<Rational, 3>, 3>;

M3 commutator(const M3& a, const M3& b) {
    M3 r{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int l = 0; l < 3; ++l) r[i][j] = r[i][j] + a[i][l] * b[l][j] - b[i][l] * a[l][j];
    return r;
}

void expect_pass(const Report& r) {
    for (auto& i : r.items) EXPECT_TRUE(i.pass) << r.check << ": " << i.name << " " << i.detail;
}

const CheckItem& item(const Report& r, const std::string& name) {
    for (auto& i : r.items)
        if (i.name == name) return i;
    throw std::out_of_range(name);
}

Scalar at(const Scalar& s, long long n, long long d = 1) { return Scalar(s.eval({{"k", Rational(n, d)}})); }

}  // namespace

TEST(Sl3, BracketMatchesMatrices) {
    for (int i = 0; i < sl3::kDim; ++i)
        for (int j = 0; j < sl3::kDim; ++j) {
            M3 lhs = commutator(sl3::matrix(i), sl3::matrix(j));
            M3 rhs{};
            for (auto& [l, c] : sl3::bracket(i, j)) {
                M3 x = sl3::matrix(l);
                for (int a = 0; a < 3; ++a)
                    for (int b = 0; b < 3; ++b) rhs[a][b] = rhs[a][b] + c * x[a][b];
            }
            EXPECT_EQ(lhs, rhs) << i << " " << j;
        }
    EXPECT_EQ(sl3::kappa(sl3::index("h1"), sl3::index("h2")), Rational(-1));
    EXPECT_EQ(sl3::kappa(sl3::index("e3"), sl3::index("f3")), Rational(1));
    EXPECT_EQ(sl3::kappa(sl3::index("h1"), sl3::index("h1")), Rational(2));
}

TEST(Wakimoto, AffineRelations) {
    Space sp = wakimoto_space(k);
    Fock f(sp);
    Engine e(f);
    auto d = wakimoto(k, wakimoto_atoms(sp));
    auto r = verify_affine(e, d, k, vacuum_probes(f, {}, 1).states, mode_box(-2, 2));
    EXPECT_EQ(r.items.size(), 36u);
    expect_pass(r);
}

TEST(Wakimoto, OtherParseOfF3Fails) {
    Space sp = wakimoto_space(k);
    Fock f(sp);
    Engine e(f);
    auto d = wakimoto(k, wakimoto_atoms(sp), 1);
    auto r = verify_affine(e, d, k, vacuum_probes(f, {}, 1).states, mode_box(-1, 1));
    EXPECT_GT(r.failures(), 0u);
}

TEST(Wakimoto, SpotValues) {
    Space sp = wakimoto_space(k);
    Fock f(sp);
    Engine e(f);
    auto d = wakimoto(k, wakimoto_atoms(sp));
    FockState vac = f.vacuum();
    // [h1_(1), h2_(-1)] vac = -k vac
    FockState c = e.apply(d.at("h1"), 1, e.apply(d.at("h2"), -1, vac)) -
                  e.apply(d.at("h2"), -1, e.apply(d.at("h1"), 1, vac));
    EXPECT_EQ(c, -k * vac);
    // [e3_(0), f3_(0)] = (h1 + h2)_(0) on a charged probe
    FockState v = e.apply(d.at("e2"), -1, vac);
    FockState lhs = e.apply(d.at("e3"), 0, e.apply(d.at("f3"), 0, v)) - e.apply(d.at("f3"), 0, e.apply(d.at("e3"), 0, v));
    EXPECT_EQ(lhs, e.apply(d.at("h1") + d.at("h2"), 0, v));
    EXPECT_FALSE(lhs.is_zero());
}

TEST(Wakimoto, Sugawara) {
    Space sp = wakimoto_space(k);
    Fock f(sp);
    Engine e(f);
    auto d = wakimoto(k, wakimoto_atoms(sp));
    Field L = sugawara_from_currents(k, d);
    Scalar c = 8 * k / (k + 3);
    auto r = verify_sugawara(e, L, c, d, vacuum_probes(f, {}, 1).states, mode_box(-1, 2));
    expect_pass(r);
    EXPECT_EQ(at(c, 1), Scalar(2));
    // L_0 is the math mode 1; e2_(-1) vac has weight one
    FockState v = e.apply(d.at("e2"), -1, f.vacuum());
    EXPECT_EQ(e.apply(L, 1, v), v);
}

TEST(Bosonized, ScreeningAndFactorization) {
    Space sp = bosonized_space(k);
    Fock f(sp);
    Engine e(f);
    auto r0 = wakimoto(k, bosonized_atoms(sp));
    auto p0 = phi0(k, phi0_bosonized_atoms(sp, k));
    auto probes = vacuum_probes(f, {}, 1).states;
    Field Q = vertex(sp.gen("x"));
    EXPECT_TRUE(e.apply(Q, 0, f.vacuum()).is_zero());
    auto scr = verify_screening(e, r0, Q, probes, -2, 2);
    EXPECT_EQ(scr.items.size(), 8u);
    expect_pass(scr);
    expect_pass(verify_factorization(e, r0, p0, probes, -2, 2));
    expect_pass(verify_affine(e, r0, k, vacuum_probes(f, {}, 1).states, mode_box(-1, 1)));
}

TEST(Bosonized, TrivialCocycleBreaksScreening) {
    Space sp = bosonized_space(k);
    sp.cocycle.clear();
    Fock f(sp);
    Engine e(f);
    auto r0 = wakimoto(k, bosonized_atoms(sp));
    auto scr = verify_screening(e, r0, vertex(sp.gen("x")), vacuum_probes(f, {}, 1).states, -2, 2);
    EXPECT_GT(scr.failures(), 0u);
}

TEST(Bosonized, Phi0SugawaraImage) {
    Space sp = bosonized_space(k);
    Fock f(sp);
    Engine e(f);
    auto a = phi0_bosonized_atoms(sp, k);
    auto d = phi0(k, a);
    Dictionary both;
    both.set("L", sugawara_from_currents(k, d));
    Dictionary image;
    image.set("L", sugawara_phi0(k, a));
    expect_pass(verify_factorization(e, both, image, vacuum_probes(f, {}, 1).states, -1, 2));
}

TEST(BP, OPEFromFreeFields) {
    Space sp = free_pi_space(k);
    Fock f(sp);
    Engine e(f);
    BPFields b = rho1(k, beta(sp, "bt"), gamma(sp, "gt"), current(sp, "at1"), current(sp, "at2"));
    auto r = verify_bp_ope(e, b, k, vacuum_probes(f, {}, 1).states, mode_box(-1, 2));
    expect_pass(r);
    EXPECT_EQ(item(r, "G+ G- pole 3").detail, ((k + 1) * (2 * k + 3)).str());
    EXPECT_EQ(item(r, "L L pole 4").detail, (-(2 * k + 3) * (3 * k + 1) / (2 * (k + 3))).str());
}

TEST(Phi1, AffineOnFreeFields) {
    Space sp = free_pi_space(k);
    Fock f(sp);
    Engine e(f);
    auto d = phi1(k, phi1_free_atoms(sp, k));
    expect_pass(verify_affine(e, d, k, vacuum_probes(f, {}, 0).states, mode_box(-2, 2)));
}

TEST(Phi1, AffineOnTwistedSector) {
    Space sp = free_pi_space(k);
    Fock f(sp);
    Engine e(f);
    auto d = phi1(k, phi1_free_atoms(sp, k));
    Exponent sec = sp.exponent({{"d1", Scalar::frac(-1, 2)}, {"d2", Scalar::frac(-1, 2)}, {"c1", l1}, {"c2", l2}});
    expect_pass(verify_affine(e, d, k, vacuum_probes(f, sec, 0).states, mode_box(-1, 1)));
}

TEST(Phi1, PiVirasoroCentralCharge) {
    Space sp = free_pi_space(k);
    Fock f(sp);
    Engine e(f);
    Dictionary none;
    auto r = verify_sugawara(e, pi_virasoro(k, phi1_free_atoms(sp, k)), 4 + 8 * k, none,
                             vacuum_probes(f, {}, 2).states, mode_box(-1, 3));
    expect_pass(r);
}

TEST(Phi1, SugawaraImage) {
    Space sp = free_pi_space(k);
    Fock f(sp);
    Engine e(f);
    auto a = phi1_free_atoms(sp, k);
    auto d = phi1(k, a);
    Dictionary lhs, rhs;
    lhs.set("L", sugawara_from_currents(k, d));
    rhs.set("L", sugawara_phi1(k, a));
    expect_pass(verify_factorization(e, lhs, rhs, vacuum_probes(f, {}, 0).states, -1, 2));
}

TEST(ZK, ScreeningEigenvalues) {
    auto [t, w] = zk_screening_eigen(k);
    EXPECT_EQ(t, (4 * k + 9) / 3);
    EXPECT_EQ(w, -(k + 3) * (4 * k + 9) * (5 * k + 12) / 27);
    EXPECT_EQ(at(t, 0), Scalar(3));
}
