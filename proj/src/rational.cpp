#include "ffsl3/rational.hpp"

#include <limits>
#include <numeric>
#include <stdexcept>

namespace ffsl3 {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

constexpr __int128 kMax = std::numeric_limits<long long>::max();

mpz_class mpz_from_i128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u = neg ? (unsigned __int128)(-(v + 1)) + 1 : (unsigned __int128)v;
    mpz_class hi = (unsigned long)(uint64_t)(u >> 64);
    mpz_class lo = (unsigned long)(uint64_t)u;
    mpz_class r = (hi << 64) + lo;
    return neg ? mpz_class(-r) : r;
}

}  // namespace

Rational::Rational(long long n, long long d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    *this = from_i128(n, d);
}

Rational::Rational(const mpq_class& q) { set_big(q); }

Rational Rational::parse(const std::string& s) {
    mpq_class q;
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: " + s);
    if (q.get_den() == 0) throw std::domain_error("rational with zero denominator");
    q.canonicalize();
    return Rational(q);
}

Rational Rational::from_i128(__int128 n, __int128 d) {
    if (d < 0) {
        n = -n;
        d = -d;
    }
    __int128 g = gcd128(n, d);
    if (g > 1) {
        n /= g;
        d /= g;
    }
    Rational r;
    if (n <= kMax && n >= -kMax && d <= kMax) {
        r.n_ = (long long)n;
        r.d_ = (long long)d;
    } else {
        mpq_class q(mpz_from_i128(n), mpz_from_i128(d));
        q.canonicalize();
        r.set_big(q);
    }
    return r;
}

void Rational::set_big(mpq_class q) {
    if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p() &&
        q.get_num() != std::numeric_limits<long>::min()) {
        n_ = q.get_num().get_si();
        d_ = q.get_den().get_si();
        big_.reset();
    } else {
        n_ = 0;
        d_ = 1;
        big_ = std::make_unique<mpq_class>(std::move(q));
    }
}

mpq_class Rational::to_mpq() const {
    if (big_) return *big_;
    return mpq_class(mpz_class((long)n_), mpz_class((long)d_));
}

mpz_class Rational::num() const { return big_ ? big_->get_num() : mpz_class((long)n_); }
mpz_class Rational::den() const { return big_ ? big_->get_den() : mpz_class((long)d_); }

bool Rational::is_integer() const { return big_ ? big_->get_den() == 1 : d_ == 1; }

int Rational::sign() const {
    if (big_) return sgn(*big_);
    return (n_ > 0) - (n_ < 0);
}

long Rational::to_long() const {
    if (!is_integer() || big_) throw std::domain_error("rational is not a small integer: " + str());
    return (long)n_;
}

double Rational::to_double() const { return big_ ? big_->get_d() : double(n_) / double(d_); }

std::string Rational::str() const {
    if (big_) return big_->get_str();
    if (d_ == 1) return std::to_string(n_);
    return std::to_string(n_) + "/" + std::to_string(d_);
}

Rational Rational::operator-() const {
    if (big_) return Rational(mpq_class(-*big_));
    return from_i128(-(__int128)n_, d_);
}

Rational operator+(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        if (a.d_ == b.d_) return Rational::from_i128((__int128)a.n_ + b.n_, a.d_);
        return Rational::from_i128((__int128)a.n_ * b.d_ + (__int128)b.n_ * a.d_, (__int128)a.d_ * b.d_);
    }
    return Rational(mpq_class(a.to_mpq() + b.to_mpq()));
}

Rational operator-(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        if (a.d_ == b.d_) return Rational::from_i128((__int128)a.n_ - b.n_, a.d_);
        return Rational::from_i128((__int128)a.n_ * b.d_ - (__int128)b.n_ * a.d_, (__int128)a.d_ * b.d_);
    }
    return Rational(mpq_class(a.to_mpq() - b.to_mpq()));
}

Rational operator*(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) {
        if (a.d_ == 1 && b.d_ == 1) {
            __int128 p = (__int128)a.n_ * b.n_;
            if (p <= kMax && p >= -kMax) {
                Rational r;
                r.n_ = (long long)p;
                return r;
            }
        }
        return Rational::from_i128((__int128)a.n_ * b.n_, (__int128)a.d_ * b.d_);
    }
    return Rational(mpq_class(a.to_mpq() * b.to_mpq()));
}

Rational operator/(const Rational& a, const Rational& b) {
    if (b.is_zero()) throw std::domain_error("division by zero rational");
    if (!a.big_ && !b.big_) return Rational::from_i128((__int128)a.n_ * b.d_, (__int128)a.d_ * b.n_);
    return Rational(mpq_class(a.to_mpq() / b.to_mpq()));
}

bool operator==(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return a.n_ == b.n_ && a.d_ == b.d_;
    if (!a.big_ || !b.big_) return false;  // canonical: big values never fit small
    return *a.big_ == *b.big_;
}

bool operator<(const Rational& a, const Rational& b) {
    if (!a.big_ && !b.big_) return (__int128)a.n_ * b.d_ < (__int128)b.n_ * a.d_;
    return a.to_mpq() < b.to_mpq();
}

uint64_t Rational::residue() const {
    auto red = [](const mpz_class& z) {
        mpz_class r = z % mpz_class(std::to_string(modp::P));
        if (r < 0) r += mpz_class(std::to_string(modp::P));
        return (uint64_t)std::stoull(r.get_str());
    };
    uint64_t nn, dd;
    if (big_) {
        nn = red(big_->get_num());
        dd = red(big_->get_den());
    } else {
        long long n = n_ % (long long)modp::P;
        nn = n < 0 ? (uint64_t)(n + (long long)modp::P) : (uint64_t)n;
        dd = (uint64_t)d_ % modp::P;
    }
    return modp::mul(nn, modp::inv(dd));
}

Rational binomial(const Rational& m, long j) {
    if (j < 0) return Rational(0);
    Rational r(1);
    for (long i = 0; i < j; ++i) r = r * (m - Rational(i)) / Rational(i + 1);
    return r;
}

namespace modp {
uint64_t mul(uint64_t a, uint64_t b) {
    unsigned __int128 p = (unsigned __int128)a * b;
    uint64_t lo = (uint64_t)(p & P), hi = (uint64_t)(p >> 61);
    uint64_t s = lo + hi;
    if (s >= P) s -= P;
    return s;
}
uint64_t add(uint64_t a, uint64_t b) {
    uint64_t s = a + b;
    if (s >= P) s -= P;
    return s;
}
uint64_t sub(uint64_t a, uint64_t b) { return a >= b ? a - b : a + P - b; }
uint64_t pow(uint64_t a, uint64_t e) {
    uint64_t r = 1;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}
uint64_t inv(uint64_t a) {
    if (a == 0) throw std::domain_error("modular inverse of zero");
    return pow(a, P - 2);
}
}  // namespace modp

}  // namespace ffsl3
