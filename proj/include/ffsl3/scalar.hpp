#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "ffsl3/rational.hpp"

namespace ffsl3 {

constexpr int kMaxVars = 16;

// Global symbol table; the first entries are registered in a fixed order so
// printed polynomials are stable across programs.
int symbol_index(const std::string& name);
const std::string& symbol_name(int idx);
int symbol_count();

struct Mono {
    std::array<uint8_t, kMaxVars> e{};
    int degree() const;
    bool operator==(const Mono& o) const { return e == o.e; }
    bool operator<(const Mono& o) const { return e < o.e; }
    bool divides(const Mono& o) const;
};

struct Term {
    Mono m;
    Rational c;
};

using TermVec = boost::container::small_vector<Term, 2>;

class Poly {
public:
    Poly() = default;
    explicit Poly(const Rational& c);
    static Poly var(int idx, int power = 1);

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    Rational constant_value() const;  // throws unless constant
    const TermVec& terms() const { return terms_; }
    const Term& lead() const { return terms_.front(); }
    int degree_in(int var) const;
    int total_degree() const;
    std::set<int> variables() const;

    Poly operator-() const;
    friend Poly operator+(const Poly& a, const Poly& b);
    friend Poly operator-(const Poly& a, const Poly& b);
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly scaled(const Rational& c) const;
    friend bool operator==(const Poly& a, const Poly& b);
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }
    friend bool operator<(const Poly& a, const Poly& b);

    // Exact division; returns false (leaving q unspecified) if d does not divide.
    bool divide_exact(const Poly& d, Poly& q) const;
    // content * primitive, primitive has coprime integer coefficients and a
    // positive leading coefficient.
    std::pair<Rational, Poly> primitive() const;

    Rational eval(const std::vector<const Rational*>& values) const;
    uint64_t eval_mod(const std::vector<uint64_t>& values) const;
    std::string str() const;

private:
    friend class Scalar;
    static Poly merge(const Poly& a, const Poly& b, bool subtract);
    void normalize();
    TermVec terms_;  // strictly descending monomials, nonzero coefficients
};

// Exact element of Q(k, params...). The denominator is kept as a list of
// primitive polynomial factors with multiplicities; no multivariate gcd is
// taken, only trial division against the known factors.
class Scalar {
public:
    Scalar() = default;
    Scalar(long long n) : num_(Rational(n)) {}
    Scalar(const Rational& r) : num_(r) {}
    explicit Scalar(const Poly& p) : num_(p) {}
    static Scalar frac(long long n, long long d) { return Scalar(Rational(n, d)); }
    // Global (unchecked) indeterminate; modules use Context::var.
    static Scalar sym(const std::string& name);

    bool is_zero() const { return num_.is_zero(); }
    bool is_constant() const { return den_.empty() && num_.is_constant(); }
    bool is_polynomial() const { return den_.empty(); }
    Rational constant_value() const;  // throws unless constant
    bool is_integer_constant() const;
    const Poly& numerator() const { return num_; }
    Poly denominator() const;
    std::set<int> variables() const;

    Scalar operator-() const;
    friend Scalar operator+(const Scalar& a, const Scalar& b);
    friend Scalar operator-(const Scalar& a, const Scalar& b);
    friend Scalar operator*(const Scalar& a, const Scalar& b);
    friend Scalar operator/(const Scalar& a, const Scalar& b);
    Scalar& operator+=(const Scalar& b);
    Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
    Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
    Scalar& operator/=(const Scalar& b) { return *this = *this / b; }
    friend bool operator==(const Scalar& a, const Scalar& b);
    friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
    Scalar pow(int e) const;

    // Exact evaluation; throws on a missing indeterminate or at a pole.
    Rational eval(const std::map<std::string, Rational>& assignment) const;
    // Substitute indeterminates by scalars.
    Scalar subs(const std::map<std::string, Scalar>& s) const;
    // Hash-quality fingerprint: evaluation mod 2^61-1 at fixed residues.
    uint64_t fingerprint() const;

    std::string str() const;        // "p" or "(p) / (q)"
    std::string canonical() const;  // always "p / q"

private:
    void cancel();
    void add_den_factor(Poly f, int e);
    Poly num_;
    std::vector<std::pair<Poly, int>> den_;  // sorted, primitive, nonconstant
};

// Declared set of indeterminates for a computation; asking for an undeclared
// one is an error.
class Context {
public:
    Context(std::initializer_list<std::string> names);
    explicit Context(const std::vector<std::string>& names);
    Scalar var(const std::string& name) const;
    bool declared(const std::string& name) const { return names_.count(name) > 0; }
    // Throws if s uses an indeterminate outside the context.
    void check(const Scalar& s) const;
    const std::set<std::string>& names() const { return names_; }

private:
    std::set<std::string> names_;
};

inline Scalar operator*(const Scalar& a, long long b) { return a * Scalar(b); }
inline Scalar operator*(long long a, const Scalar& b) { return Scalar(a) * b; }
inline Scalar operator+(const Scalar& a, long long b) { return a + Scalar(b); }
inline Scalar operator+(long long a, const Scalar& b) { return Scalar(a) + b; }
inline Scalar operator-(const Scalar& a, long long b) { return a - Scalar(b); }
inline Scalar operator-(long long a, const Scalar& b) { return Scalar(a) - b; }
inline Scalar operator/(const Scalar& a, long long b) { return a / Scalar(b); }
inline Scalar operator/(long long a, const Scalar& b) { return Scalar(a) / b; }

}  // namespace ffsl3
