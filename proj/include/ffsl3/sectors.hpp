#pragma once

#include <string>
#include <vector>

#include "ffsl3/fields.hpp"
#include "ffsl3/report.hpp"

namespace ffsl3 {

// Pi_{r1,r2}(l1,l2) = Pi(0)^2 e^{r1 d1/2 + r2 d2/2 + l1 c1 + l2 c2}. With
// third_lattice the c2 charge may move by thirds.
struct PiModuleDesc {
    int r1 = 0, r2 = 0;
    Scalar l1, l2;
    bool third_lattice = false;

    // exponent of the sector with charges shifted by (s1, s2)
    Exponent sector(const Space& sp, const Scalar& s1 = Scalar(0), const Scalar& s2 = Scalar(0)) const;
    // true when e is one of this module's sectors
    bool contains(const Space& sp, const Exponent& e) const;
};

// Pi(0)^2 with <ci, di> = 2
Space pi_space();

// The b-hat generators in Pi(0)^2 coordinates
struct BHatBasis {
    Field e1, e2, e3, hbar;
};
BHatBasis bhat_basis(const Space& sp, const Scalar& k);

struct ModeLetter {
    std::string gen;  // e1, e2, e3 or hbar
    long mode;        // math mode
};

struct Reduction {
    std::vector<ModeLetter> word;  // application order: word[0] acts first
    FockState top;
};

// Word in b-hat modes taking a nonzero weight vector to the top space
// (pure exponentials). Throws on zero input and on a stalled reduction.
Reduction reduce_to_top(Engine& e, const BHatBasis& b, const FockState& s, const PiModuleDesc& desc);
FockState replay(Engine& e, const BHatBasis& b, const std::vector<ModeLetter>& word, const FockState& s);
std::string word_str(const std::vector<ModeLetter>& word);
// true when every term is a bare exponential
bool is_top(const Fock& f, const FockState& s);

struct KLWeights {
    long a = 0, b = 0;
    Scalar x, y, m1, m2;
};
KLWeights singular_weights(long a, long b, const Scalar& k);

Scalar singular_residual(const Scalar& k, const Scalar& x, const Scalar& y, const Scalar& m);

// sl3 weight (h1(0), h2(0)) of v (x) e^{m c2}
std::pair<Scalar, Scalar> singular_sl3_weight(const Scalar& k, const Scalar& x, const Scalar& y, const Scalar& m);

// Raising modes on v (x) e^{m c2} through Phi1 and the highest-weight
// evaluator; f3(1) must give singular_residual times v (x) e^{(m-1) c2}.
Report verify_singular(const Scalar& k, const Scalar& x, const Scalar& y, const Scalar& m, int window = 2);

// dim of the top space of L[x,y] at KL weights (a,b): least i with h_i = 0.
// The dual uses h_i(-x, y + x).
long kl_top_dim(long a, long b, const Scalar& k, bool dual = false);

struct SingularCandidate {
    int level;
    FockState state;
};
// Exhaustive search in the image of the vacuum under Phi1 o rho1 at a
// numeric level: vectors of each conformal level killed by e1(0), e2(0)
// and f3(1).
std::vector<SingularCandidate> vacuum_singular_probe(const Rational& k, int max_level);
// e3(-1)^l applied to the vacuum in the same model
FockState e3_power_vacuum(const Rational& k, int l);
// whether e3(-1)^l 1 lies in the span of the candidates found at level l
bool flags_e3_power(const Rational& k, int l);
// sum :J^a J_a: applied to the vacuum; at k = -3 it is central
FockState casimir_vacuum(const Rational& k);
// the candidates at this level are exactly the line of casimir_vacuum
bool candidates_are_casimir(const Rational& k, int level);

}  // namespace ffsl3
