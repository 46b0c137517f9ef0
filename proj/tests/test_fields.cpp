#include <gtest/gtest.h>

#include "ffsl3/fields.hpp"

using namespace ffsl3;

namespace {

Context ctx{"k", "lambda1", "x", "y"};
Scalar k = ctx.var("k");
Scalar l1 = ctx.var("lambda1");
Scalar X = ctx.var("x");
Scalar Y = ctx.var("y");

Space pi2() {
    Space s;
    s.heis = {"c1", "d1", "c2", "d2"};
    s.gram.assign(4, std::vector<Scalar>(4));
    s.gram[0][1] = s.gram[1][0] = Scalar(2);
    s.gram[2][3] = s.gram[3][2] = Scalar(2);
    return s;
}

Space bp_only() {
    Space s;
    s.bp = true;
    s.bp_x = X;
    s.bp_y = Y;
    return s;
}

Scalar h_poly(const Scalar& i) {
    return -i * i + k * i - 3 * X * i + 3 * i - 3 * X * X - k + 2 * k * X + 6 * X + k * Y + 3 * Y - 2;
}

}  // namespace

TEST(ModeApply, Examples) {
    Space sp = pi2();
    Fock f(sp);
    Engine e(f);
    Field c1 = current(sp, "c1"), d1 = current(sp, "d1");
    FockState v = f.vacuum(sp.exponent({{"d1", Scalar::frac(-1, 2)}, {"c1", l1}}));
    EXPECT_EQ(e.apply(c1, 0, v), Scalar(-1) * v);
    EXPECT_TRUE(e.apply(nord(c1, d1), 1, f.vacuum()).is_zero());
    EXPECT_EQ(e.apply(vertex(sp.gen("c1")), -1, f.vacuum()), f.vacuum(sp.gen("c1")));
    EXPECT_EQ(field_str(nord(c1, vertex(-sp.gen("c1"))), sp), ":c1 V[(-1)*c1]:");
}

TEST(ModeApply, DerivativeOfVertexIsNormalProduct) {
    Space sp = pi2();
    Fock f(sp);
    Engine e(f);
    Exponent mu = sp.exponent({{"c1", 1}, {"d2", Scalar::frac(1, 2)}});
    Field lhs = deriv(vertex(mu));
    Field rhs = nord(current(mu), vertex(mu));
    Exponent sec = sp.exponent({{"c2", 1}, {"d1", 1}});
    for (auto id : f.enumerate_basis(sec, 2))
        for (long n = -3; n <= 2; ++n) {
            FockState v = f.basis_state(id);
            EXPECT_EQ(e.apply(lhs, n, v), e.apply(rhs, n, v));
        }
}

TEST(ModeApply, Linearity) {
    Space sp = pi2();
    Fock f(sp);
    Engine e(f);
    Field a = nord(current(sp, "c1"), vertex(sp.gen("c2")));
    Field b = deriv(current(sp, "d2"));
    auto basis = f.enumerate_basis({}, 2);
    FockState s = f.basis_state(basis[3]) + Scalar(5) * f.basis_state(basis[9]);
    for (long n = -2; n <= 2; ++n) {
        EXPECT_EQ(e.apply(a + (k * b), n, s), e.apply(a, n, s) + k * e.apply(b, n, s));
        EXPECT_EQ(e.apply(a, n, k * s), k * e.apply(a, n, s));
    }
}

TEST(ModeApply, NormalProductOfCurrentsMatchesBracket) {
    // T = :c1 d1: gives [T_(m), c1_(n)] = -2n c1_(m+n-1)
    Space sp = pi2();
    Fock f(sp);
    Engine e(f);
    Field T = nord(current(sp, "c1"), current(sp, "d1"));
    Field c1 = current(sp, "c1");
    auto probes = f.enumerate_basis(sp.gen("c1", l1), 2);
    std::vector<FockState> ps;
    for (auto id : probes) ps.push_back(f.basis_state(id));
    std::vector<std::pair<long, long>> modes;
    for (long m = -2; m <= 2; ++m)
        for (long n = -2; n <= 2; ++n) modes.push_back({m, n});
    auto rep2 = check_commutator(
        e, T, c1, [&](long m, long n) { return std::vector<ModeTerm>{{c1, m + n - 1, Scalar(-2 * n)}}; }, modes, ps);
    EXPECT_TRUE(rep2.pass);
}

TEST(Brackets, Examples) {
    OPETable t = bp_ope_table(k);
    auto jj = bracket_modes("J", "J", 1, -1, t);
    ASSERT_EQ(jj.size(), 1u);
    EXPECT_EQ(jj[0].field->kind, FieldKind::Scale);
    EXPECT_EQ(jj[0].field->s, (2 * k + 3) / 3);
    EXPECT_EQ(jj[0].field->kids[0]->kind, FieldKind::Identity);
    EXPECT_EQ(jj[0].mode, -1);
    auto jg = bracket_modes("J", "G+", 0, 4, t);
    ASSERT_EQ(jg.size(), 1u);
    EXPECT_EQ(jg[0].field, bp(BPGen::Gp));
    EXPECT_EQ(jg[0].mode, 4);
    EXPECT_EQ(jg[0].coeff, Scalar(1));
    EXPECT_TRUE(bracket_modes("G+", "G+", 2, -3, t).empty());
    EXPECT_THROW(bracket_modes("J", "W", 0, 0, t), std::invalid_argument);
}

TEST(HwEvaluate, Examples) {
    Fock f(bp_only());
    Engine e(f, bp_ope_table(k));
    FockState v = f.vacuum();
    EXPECT_EQ(e.hw_evaluate({{0, 0}}, v), X * v);
    // G-(0) G+(0) v in conformal modes: G-_(1) G+_(0)
    EXPECT_EQ(e.hw_evaluate({{2, 1}, {1, 0}}, v), h_poly(1) * v);
    // G-(0) G+(0)^i v = i h_i G+(0)^{i-1} v (commutator sum of f(x+s), s < i)
    for (int i = 2; i <= 4; ++i) {
        std::vector<BPLetter> w(i + 1, BPLetter{1, 0});
        w[0] = {2, 1};
        std::vector<BPLetter> w2(i - 1, BPLetter{1, 0});
        EXPECT_EQ(e.hw_evaluate(w, v), Scalar(i) * h_poly(Scalar(i)) * e.hw_evaluate(w2, v)) << i;
    }
    // annihilators
    for (auto l : std::vector<BPLetter>{{0, 1}, {0, 3}, {1, 1}, {2, 1}, {2, 2}, {3, 2}, {3, 5}})
        EXPECT_TRUE(e.hw_evaluate({l}, v).is_zero());
}

TEST(HwEvaluate, ModeAlgebraConsistency) {
    // the straightened action respects every OPE bracket on low probes
    Fock f(bp_only());
    OPETable t = bp_ope_table(k);
    Engine e(f, t);
    FockState v = f.vacuum();
    std::vector<FockState> probes{v, e.hw_evaluate({{1, 0}}, v), e.hw_evaluate({{2, 0}}, v),
                                  e.hw_evaluate({{0, -1}}, v), e.hw_evaluate({{3, -1}, {1, 0}}, v)};
    std::vector<std::string> names{"J", "G+", "G-", "L"};
    for (auto& a : names)
        for (auto& b : names) {
            std::vector<std::pair<long, long>> modes;
            for (long m = -1; m <= 2; ++m)
                for (long n = -1; n <= 2; ++n) modes.push_back({m, n});
            auto rep = check_commutator(
                e, t.field(a), t.field(b), [&](long m, long n) { return bracket_modes(a, b, m, n, t); }, modes,
                probes);
            EXPECT_TRUE(rep.pass) << a << " " << b;
        }
}
