#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <string>

namespace ffsl3 {

// Exact rational with an int64 fast path; values that do not fit fall back
// to a heap-allocated GMP rational.
class Rational {
public:
    Rational() = default;
    Rational(long long n) : n_(n), d_(1) {}
    Rational(long long n, long long d);
    explicit Rational(const mpq_class& q);
    static Rational parse(const std::string& s);

    Rational(const Rational& o) : n_(o.n_), d_(o.d_) {
        if (o.big_) big_ = std::make_unique<mpq_class>(*o.big_);
    }
    Rational(Rational&&) noexcept = default;
    Rational& operator=(const Rational& o) {
        if (this != &o) {
            n_ = o.n_;
            d_ = o.d_;
            big_ = o.big_ ? std::make_unique<mpq_class>(*o.big_) : nullptr;
        }
        return *this;
    }
    Rational& operator=(Rational&&) noexcept = default;

    bool is_zero() const { return !big_ && n_ == 0; }
    bool is_one() const { return !big_ && n_ == 1 && d_ == 1; }
    bool is_integer() const;
    int sign() const;
    bool is_small() const { return !big_; }
    long long small_num() const { return n_; }
    long long small_den() const { return d_; }

    mpq_class to_mpq() const;
    mpz_class num() const;
    mpz_class den() const;
    // Throws unless the value is an integer fitting in a long.
    long to_long() const;
    double to_double() const;
    std::string str() const;

    Rational operator-() const;
    friend Rational operator+(const Rational& a, const Rational& b);
    friend Rational operator-(const Rational& a, const Rational& b);
    friend Rational operator*(const Rational& a, const Rational& b);
    friend Rational operator/(const Rational& a, const Rational& b);
    Rational& operator+=(const Rational& b) { return *this = *this + b; }
    Rational& operator-=(const Rational& b) { return *this = *this - b; }
    Rational& operator*=(const Rational& b) { return *this = *this * b; }
    Rational& operator/=(const Rational& b) { return *this = *this / b; }
    friend bool operator==(const Rational& a, const Rational& b);
    friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
    friend bool operator<(const Rational& a, const Rational& b);
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
    friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

    // Residue modulo the Mersenne prime 2^61-1 (used for hashing only).
    uint64_t residue() const;

private:
    void set_big(mpq_class q);
    static Rational from_i128(__int128 n, __int128 d);

    long long n_ = 0;
    long long d_ = 1;
    std::unique_ptr<mpq_class> big_;
};

Rational binomial(const Rational& m, long j);

namespace modp {
constexpr uint64_t P = (uint64_t(1) << 61) - 1;
uint64_t mul(uint64_t a, uint64_t b);
uint64_t add(uint64_t a, uint64_t b);
uint64_t sub(uint64_t a, uint64_t b);
uint64_t pow(uint64_t a, uint64_t e);
uint64_t inv(uint64_t a);
}  // namespace modp

}  // namespace ffsl3
