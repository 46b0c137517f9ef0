#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "ffsl3/linalg.hpp"
#include "ffsl3/report.hpp"
#include "ffsl3/scalar.hpp"

namespace ffsl3 {

// Top of R_M(lambda) (x) Pi_{-1,-1}(l1,l2): Z^k highest weight (w, Delta)
struct InfiniteTopParams {
    Scalar k, w, delta, lambda, l1, l2;
};

// Top of L[x,y] (x) Pi_{-1,-1}(l1,l2) with dim L[x,y]_top = N
struct FiniteTopParams {
    Scalar k, x, y;
    int N = 1;
    Scalar l1, l2;
};

// y solving h_N(x, y) = 0
Scalar finite_top_y(const Scalar& k, const Scalar& x, int N);

Scalar p_poly(const InfiniteTopParams& P, const Scalar& xbar);
Scalar h_poly(const Scalar& k, const Scalar& i, const Scalar& x, const Scalar& y);

using TopIndex = std::array<long, 3>;  // (n,m,p) or (i,m,p)
using TopVector = std::vector<std::pair<TopIndex, Scalar>>;

TopVector normalize(TopVector v);

TopVector act_infinite(int g, const TopIndex& v, const InfiniteTopParams& P);

// G-(0) G+(0)^i v = i h_i G+(0)^{i-1} v on the basis G+(0)^i v; the printed
// table uses h_i alone.
enum class FiniteConvention { Derived, Printed };
TopVector act_finite(int g, const TopIndex& v, const FiniteTopParams& P,
                     FiniteConvention conv = FiniteConvention::Derived);

// Every bracket [g, g'] acting on every index of the box, computed as the
// action of the bracket and as the commutator of the actions.
Report check_representation(const InfiniteTopParams& P, long half_width);
Report check_representation(const FiniteTopParams& P, long half_width,
                            FiniteConvention conv = FiniteConvention::Derived);

// Rows are images: M[i][j] is the coefficient of Z_j in u Z_i, with
// Z_i = w[i, m-i, p+i], u1 = e1 f1, u2 = e2 f2.
struct CentralizerPair {
    Matrix U1, U2;
};
CentralizerPair centralizer_matrices(const FiniteTopParams& P, long m, long p,
                                     FiniteConvention conv = FiniteConvention::Derived);
// The matrices as displayed alongside the irreducibility lemma
CentralizerPair centralizer_matrices_printed(const FiniteTopParams& P, long m, long p);

enum class Verdict { True, False, Indeterminate };
std::string verdict_str(Verdict v);

struct HypothesisResult {
    Verdict verdict = Verdict::True;
    std::string clause;  // first failing or undecidable clause
};

enum class Hypotheses { Conj1, ThmN1, LemmaCent };
HypothesisResult hypothesis_check(const InfiniteTopParams& P);
HypothesisResult hypothesis_check(const FiniteTopParams& P, Hypotheses which);

struct Certificate {
    Verdict verdict = Verdict::Indeterminate;
    std::string witness;
    size_t algebra_dim = 0;
    std::vector<size_t> orbit_dims;  // span of the algebra applied to each Z_i
};
// Irreducibility of the weight space W spanned by the Z_i under the algebra
// generated by u1, u2.
Certificate irreducibility_certificate(const FiniteTopParams& P, long m, long p);

// integer roots of a polynomial with rational coefficients (constant term first)
std::vector<long> integer_roots(const std::vector<Rational>& coeffs);

}  // namespace ffsl3
