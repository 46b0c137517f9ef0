#pragma once

#include <array>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ffsl3/fields.hpp"
#include "ffsl3/report.hpp"

namespace ffsl3 {

// sl3 in the basis e1=E12, e2=E23, e3=E13, h1=E11-E22, h2=E22-E33,
// f1=E21, f2=E32, f3=E31 with the trace form.
namespace sl3 {
constexpr int kDim = 8;
const std::array<std::string, kDim>& names();
int index(const std::string& name);
std::array<std::array<Rational, 3>, 3> matrix(int i);
// [x_i, x_j] = sum of coefficient * x_l
std::vector<std::pair<int, Rational>> bracket(int i, int j);
Rational kappa(int i, int j);
}  // namespace sl3

struct Dictionary {
    std::string name;
    std::vector<std::string> order;
    std::map<std::string, Field> map;

    const Field& at(const std::string& g) const;
    void set(const std::string& g, Field f);
};

// ---- free-field spaces
// S(3) (x) pi^{k+3}: alpha1, alpha2 and three beta-gamma pairs
Space wakimoto_space(const Scalar& k);
// S(2) (x) V(1) (x) pi^{k+3}: alpha1, alpha2, x, y and pairs 1, 2
Space bosonized_space(const Scalar& k);
// S~ (x) pi~^{k+3} (x) Pi(0)^2: at1, at2, c1, d1, c2, d2 and the pair (bt, gt)
Space free_pi_space(const Scalar& k);
// abstract BP factor (x) Pi(0)^2
Space bp_pi_space(const Scalar& x, const Scalar& y);
// abstract BP factor (x) S (x) Pi(0)
Space bp_s_pi_space(const Scalar& x, const Scalar& y);
// pi~^{k+3}: at1, at2
Space zk_space(const Scalar& k);

// ---- BP generators realized or abstract; T stands for (k+3)L
struct BPFields {
    Field J, Gp, Gm, L, T;
};
BPFields bp_abstract(const Scalar& k);
// rho1 in terms of a beta-gamma pair and two currents with Gram (k+3)*Cartan
BPFields rho1(const Scalar& k, const Field& bt, const Field& gt, const Field& a1, const Field& a2);
Dictionary as_dictionary(const std::string& name, const BPFields& f);

// ---- affine images
struct WakimotoAtoms {
    Field b1, b2, b3, g1, g2, g3, a1, a2;
};
// parse 0: -:g1 (g1 g2 + g3) b1: - :g2 g3 b2: ; parse 1: -:g1 ((g1 g2 + g3) b1 - :g2 g3 b2:):
Dictionary wakimoto(const Scalar& k, const WakimotoAtoms& a, int f3_parse = 0);

struct Phi0Atoms {
    BPFields bp;
    Field beta, gamma, c, d;
    std::function<Field(int)> ec;  // e^{n c}
};
Dictionary phi0(const Scalar& k, const Phi0Atoms& a);
Field sugawara_phi0(const Scalar& k, const Phi0Atoms& a);

struct Phi1Atoms {
    BPFields bp;
    Field c1, d1, c2, d2;
    std::function<Field(int, int)> ev;  // e^{a c1 + b c2}
};
Dictionary phi1(const Scalar& k, const Phi1Atoms& a);
Field sugawara_phi1(const Scalar& k, const Phi1Atoms& a);
// Virasoro field on Pi(0)^2 with c = 4 + 8k
Field pi_virasoro(const Scalar& k, const Phi1Atoms& a);

// atoms drawn from the named spaces above
WakimotoAtoms wakimoto_atoms(const Space& sp);
WakimotoAtoms bosonized_atoms(const Space& sp);
Phi1Atoms phi1_free_atoms(const Space& sp, const Scalar& k);
Phi1Atoms phi1_abstract_atoms(const Space& sp, const Scalar& k);
// Phi0 composed with rho1, written in the bosonized space
Phi0Atoms phi0_bosonized_atoms(const Space& sp, const Scalar& k);

// Sugawara field built from the realized currents with the dual basis of the
// trace form: 1/(2(k+3)) sum :x^a x_a:
Field sugawara_from_currents(const Scalar& k, const Dictionary& d);
// sum over the dual bases of :J^a J_a:, without the 1/(2(k+3))
Field casimir_from_currents(const Dictionary& d);

// Z^k generators in the pi~ space
Dictionary zk_TW(const Scalar& k, const Space& sp);

// ---- verification suites
struct ProbeSet {
    std::vector<FockState> states;
    std::string label;
};
ProbeSet vacuum_probes(Fock& f, const Exponent& sector, int max_level);
std::vector<std::pair<long, long>> mode_box(long lo, long hi);

Report verify_affine(Engine& e, const Dictionary& d, const Scalar& k, const std::vector<FockState>& probes,
                     const std::vector<std::pair<long, long>>& modes);
Report verify_bp_ope(Engine& e, const BPFields& f, const Scalar& k, const std::vector<FockState>& probes,
                     const std::vector<std::pair<long, long>>& modes);
// Virasoro relations of L with central charge c; each listed current primary
// of weight one
Report verify_sugawara(Engine& e, const Field& L, const Scalar& c, const Dictionary& currents,
                       const std::vector<FockState>& probes, const std::vector<std::pair<long, long>>& modes);
Report verify_screening(Engine& e, const Dictionary& d, const Field& screen, const std::vector<FockState>& probes,
                        long lo, long hi);
Report verify_factorization(Engine& e, const Dictionary& a, const Dictionary& b, const std::vector<FockState>& probes,
                            long lo, long hi);
// T_0 and W_0 eigenvalues on e^p, p = -(at1 + 2 at2)/3
std::pair<Scalar, Scalar> zk_screening_eigen(const Scalar& k);

}  // namespace ffsl3
