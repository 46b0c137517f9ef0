#include "ffsl3/scalar.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace ffsl3 {

namespace {

struct SymbolTable {
    std::vector<std::string> names;
    std::unordered_map<std::string, int> index;
    std::mutex mu;
    SymbolTable() {
        for (const char* s : {"k", "lambda", "lambda1", "lambda2", "x", "y", "w", "Delta", "mbar", "t"}) {
            index[s] = (int)names.size();
            names.emplace_back(s);
        }
    }
};

SymbolTable& table() {
    static SymbolTable t;
    return t;
}

uint64_t var_residue(int idx) {
    uint64_t z = 0x9E3779B97F4A7C15ull * (uint64_t)(idx + 7);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z % modp::P;
}

}  // namespace

int symbol_index(const std::string& name) {
    auto& t = table();
    std::lock_guard<std::mutex> lock(t.mu);
    auto it = t.index.find(name);
    if (it != t.index.end()) return it->second;
    if ((int)t.names.size() >= kMaxVars) throw std::runtime_error("too many indeterminates");
    int idx = (int)t.names.size();
    t.names.push_back(name);
    t.index[name] = idx;
    return idx;
}

const std::string& symbol_name(int idx) { return table().names.at(idx); }
int symbol_count() { return (int)table().names.size(); }

int Mono::degree() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
}

bool Mono::divides(const Mono& o) const {
    for (int i = 0; i < kMaxVars; ++i)
        if (e[i] > o.e[i]) return false;
    return true;
}

namespace {
Mono mono_mul(const Mono& a, const Mono& b) {
    Mono r;
    for (int i = 0; i < kMaxVars; ++i) {
        int s = a.e[i] + b.e[i];
        if (s > 255) throw std::overflow_error("monomial exponent overflow");
        r.e[i] = (uint8_t)s;
    }
    return r;
}
Mono mono_div(const Mono& a, const Mono& b) {
    Mono r;
    for (int i = 0; i < kMaxVars; ++i) r.e[i] = (uint8_t)(a.e[i] - b.e[i]);
    return r;
}
bool desc(const Term& a, const Term& b) { return b.m < a.m; }
}  // namespace

Poly::Poly(const Rational& c) {
    if (!c.is_zero()) terms_.push_back(Term{Mono{}, c});
}

Poly Poly::var(int idx, int power) {
    Poly p;
    Term t{Mono{}, Rational(1)};
    t.m.e[idx] = (uint8_t)power;
    p.terms_.push_back(t);
    return p;
}

bool Poly::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].m.degree() == 0); }

Rational Poly::constant_value() const {
    if (!is_constant()) throw std::domain_error("polynomial is not constant: " + str());
    return terms_.empty() ? Rational(0) : terms_[0].c;
}

int Poly::degree_in(int var) const {
    int d = 0;
    for (auto& t : terms_) d = std::max(d, (int)t.m.e[var]);
    return d;
}

int Poly::total_degree() const {
    int d = 0;
    for (auto& t : terms_) d = std::max(d, t.m.degree());
    return d;
}

std::set<int> Poly::variables() const {
    std::set<int> v;
    for (auto& t : terms_)
        for (int i = 0; i < kMaxVars; ++i)
            if (t.m.e[i]) v.insert(i);
    return v;
}

void Poly::normalize() {
    std::sort(terms_.begin(), terms_.end(), desc);
    TermVec out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
        if (!out.empty() && out.back().m == t.m)
            out.back().c += t.c;
        else {
            if (!out.empty() && out.back().c.is_zero()) out.pop_back();
            out.push_back(std::move(t));
        }
    }
    if (!out.empty() && out.back().c.is_zero()) out.pop_back();
    terms_ = std::move(out);
}

Poly Poly::operator-() const {
    Poly r = *this;
    for (auto& t : r.terms_) t.c = -t.c;
    return r;
}

Poly Poly::merge(const Poly& a, const Poly& b, bool subtract) {
    Poly r;
    auto& A = a.terms();
    auto& B = b.terms();
    TermVec out;
    out.reserve(A.size() + B.size());
    size_t i = 0, j = 0;
    while (i < A.size() || j < B.size()) {
        if (j == B.size() || (i < A.size() && B[j].m < A[i].m)) {
            out.push_back(A[i++]);
        } else if (i == A.size() || A[i].m < B[j].m) {
            out.push_back(Term{B[j].m, subtract ? -B[j].c : B[j].c});
            ++j;
        } else {
            Rational c = subtract ? A[i].c - B[j].c : A[i].c + B[j].c;
            if (!c.is_zero()) out.push_back(Term{A[i].m, std::move(c)});
            ++i;
            ++j;
        }
    }
    r.terms_ = std::move(out);
    return r;
}

Poly operator+(const Poly& a, const Poly& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    return Poly::merge(a, b, false);
}

Poly operator-(const Poly& a, const Poly& b) {
    if (b.is_zero()) return a;
    return Poly::merge(a, b, true);
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    if (a.terms_.size() == 1 && a.terms_[0].m.degree() == 0) return b.scaled(a.terms_[0].c);
    if (b.terms_.size() == 1 && b.terms_[0].m.degree() == 0) return a.scaled(b.terms_[0].c);
    r.terms_.reserve(a.terms_.size() * b.terms_.size());
    for (auto& s : a.terms_)
        for (auto& t : b.terms_) r.terms_.push_back(Term{mono_mul(s.m, t.m), s.c * t.c});
    r.normalize();
    return r;
}

Poly Poly::scaled(const Rational& c) const {
    Poly r;
    if (c.is_zero()) return r;
    if (c.is_one()) return *this;
    r.terms_ = terms_;
    for (auto& t : r.terms_) t.c = t.c * c;
    return r;
}

bool operator==(const Poly& a, const Poly& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    for (size_t i = 0; i < a.terms_.size(); ++i)
        if (!(a.terms_[i].m == b.terms_[i].m) || a.terms_[i].c != b.terms_[i].c) return false;
    return true;
}

bool operator<(const Poly& a, const Poly& b) {
    size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (size_t i = 0; i < n; ++i) {
        if (!(a.terms_[i].m == b.terms_[i].m)) return a.terms_[i].m < b.terms_[i].m;
        if (a.terms_[i].c != b.terms_[i].c) return a.terms_[i].c < b.terms_[i].c;
    }
    return a.terms_.size() < b.terms_.size();
}

bool Poly::divide_exact(const Poly& d, Poly& q) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    q = Poly();
    if (is_zero()) return true;
    for (int v = 0; v < kMaxVars; ++v)
        if (d.degree_in(v) > degree_in(v)) return false;
    if (d.is_constant()) {
        q = scaled(Rational(1) / d.terms_[0].c);
        return true;
    }
    Poly r = *this;
    TermVec qt;
    while (!r.is_zero()) {
        const Term& lt = r.lead();
        const Term& ld = d.lead();
        if (!ld.m.divides(lt.m)) return false;
        Term t{mono_div(lt.m, ld.m), lt.c / ld.c};
        Poly tp;
        tp.terms_.push_back(t);
        qt.push_back(t);
        r = r - d * tp;
    }
    q.terms_ = std::move(qt);
    q.normalize();
    return true;
}

std::pair<Rational, Poly> Poly::primitive() const {
    if (is_zero()) return {Rational(0), Poly()};
    mpz_class g = 0, l = 1;
    for (auto& t : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.c.num().get_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.c.den().get_mpz_t());
    }
    mpq_class content(g, l);
    content.canonicalize();
    if (lead().c.sign() < 0) content = -content;
    Rational c(content);
    return {c, scaled(Rational(1) / c)};
}

Rational Poly::eval(const std::vector<const Rational*>& values) const {
    Rational sum(0);
    for (auto& t : terms_) {
        Rational p = t.c;
        for (int i = 0; i < kMaxVars; ++i) {
            for (int j = 0; j < t.m.e[i]; ++j) {
                if (!values[i]) throw std::invalid_argument("missing value for indeterminate " + symbol_name(i));
                p = p * *values[i];
            }
        }
        sum += p;
    }
    return sum;
}

uint64_t Poly::eval_mod(const std::vector<uint64_t>& values) const {
    uint64_t sum = 0;
    for (auto& t : terms_) {
        uint64_t p = t.c.residue();
        for (int i = 0; i < kMaxVars; ++i)
            if (t.m.e[i]) p = modp::mul(p, modp::pow(values[i], t.m.e[i]));
        sum = modp::add(sum, p);
    }
    return sum;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& t : terms_) {
        Rational c = t.c;
        bool neg = c.sign() < 0;
        if (neg) c = -c;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        bool unit = c.is_one();
        bool constant = t.m.degree() == 0;
        if (!unit || constant) os << c.str();
        bool star = !unit || constant;
        for (int i = 0; i < kMaxVars; ++i) {
            if (!t.m.e[i]) continue;
            if (star) os << "*";
            star = true;
            os << symbol_name(i);
            if (t.m.e[i] > 1) os << "^" << int(t.m.e[i]);
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- Scalar

Scalar Scalar::sym(const std::string& name) { return Scalar(Poly::var(symbol_index(name))); }

Rational Scalar::constant_value() const {
    if (!is_constant()) throw std::domain_error("scalar is not constant: " + str());
    return num_.constant_value();
}

bool Scalar::is_integer_constant() const { return is_constant() && num_.constant_value().is_integer(); }

Poly Scalar::denominator() const {
    Poly d(Rational(1));
    for (auto& [f, e] : den_)
        for (int i = 0; i < e; ++i) d = d * f;
    return d;
}

std::set<int> Scalar::variables() const {
    auto v = num_.variables();
    for (auto& [f, e] : den_)
        for (int x : f.variables()) v.insert(x);
    return v;
}

void Scalar::cancel() {
    if (num_.is_zero()) {
        den_.clear();
        return;
    }
    for (auto& fe : den_) {
        while (fe.second > 0) {
            Poly q;
            if (!num_.divide_exact(fe.first, q)) break;
            num_ = std::move(q);
            --fe.second;
        }
    }
    den_.erase(std::remove_if(den_.begin(), den_.end(), [](auto& p) { return p.second == 0; }), den_.end());
}

void Scalar::add_den_factor(Poly f, int e) {
    if (e == 0) return;
    auto [c, pp] = f.primitive();
    Rational ce(1);
    for (int i = 0; i < e; ++i) ce = ce * c;
    num_ = num_.scaled(Rational(1) / ce);
    if (pp.is_constant()) return;
    for (size_t i = 0; i < den_.size(); ++i) {
        Poly& g = den_[i].first;
        if (g == pp) {
            den_[i].second += e;
            return;
        }
        Poly q;
        if (g.total_degree() < pp.total_degree() && pp.divide_exact(g, q)) {
            den_[i].second += e;
            add_den_factor(q, e);
            return;
        }
        if (pp.total_degree() < g.total_degree() && g.divide_exact(pp, q)) {
            int ge = den_[i].second;
            den_.erase(den_.begin() + (long)i);
            add_den_factor(pp, ge + e);
            add_den_factor(q, ge);
            return;
        }
    }
    den_.emplace_back(std::move(pp), e);
    std::sort(den_.begin(), den_.end(), [](auto& a, auto& b) { return a.first < b.first; });
}

Scalar Scalar::operator-() const {
    Scalar r = *this;
    r.num_ = -r.num_;
    return r;
}

namespace {
bool same_den(const std::vector<std::pair<Poly, int>>& a, const std::vector<std::pair<Poly, int>>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i].second != b[i].second || a[i].first != b[i].first) return false;
    return true;
}
}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) return a;
    if (a.is_zero()) return b;
    Scalar r;
    if (same_den(a.den_, b.den_)) {
        r.num_ = a.num_ + b.num_;
        r.den_ = a.den_;
        if (!r.den_.empty()) r.cancel();
        return r;
    }
    // lcm of the factor lists (factors matched by equality)
    std::vector<std::pair<Poly, int>> l = a.den_;
    for (auto& [f, e] : b.den_) {
        bool found = false;
        for (auto& g : l)
            if (g.first == f) {
                g.second = std::max(g.second, e);
                found = true;
            }
        if (!found) l.emplace_back(f, e);
    }
    auto cofactor = [&](const std::vector<std::pair<Poly, int>>& d) {
        Poly m(Rational(1));
        for (auto& [f, e] : l) {
            int have = 0;
            for (auto& g : d)
                if (g.first == f) have = g.second;
            for (int i = have; i < e; ++i) m = m * f;
        }
        return m;
    };
    r.num_ = a.num_ * cofactor(a.den_) + b.num_ * cofactor(b.den_);
    std::sort(l.begin(), l.end(), [](auto& x, auto& y) { return x.first < y.first; });
    r.den_ = std::move(l);
    r.cancel();
    return r;
}

Scalar& Scalar::operator+=(const Scalar& b) {
    if (den_.empty() && b.den_.empty()) {
        num_ = num_ + b.num_;
        return *this;
    }
    return *this = *this + b;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar r;
    if (a.is_zero() || b.is_zero()) return r;
    r.num_ = a.num_ * b.num_;
    if (a.den_.empty() && b.den_.empty()) return r;
    r.den_ = a.den_;
    for (auto& [f, e] : b.den_) r.add_den_factor(f, e);
    r.cancel();
    return r;
}

Scalar operator/(const Scalar& a, const Scalar& b) {
    if (b.is_zero()) throw std::domain_error("division by the zero rational function");
    Scalar r;
    if (a.is_zero()) return r;
    r.num_ = a.num_;
    for (auto& [f, e] : b.den_)
        for (int i = 0; i < e; ++i) r.num_ = r.num_ * f;
    r.den_ = a.den_;
    r.add_den_factor(b.num_, 1);
    r.cancel();
    return r;
}

bool operator==(const Scalar& a, const Scalar& b) {
    if (same_den(a.den_, b.den_)) return a.num_ == b.num_;
    return (a - b).is_zero();
}

Scalar Scalar::pow(int e) const {
    if (e < 0) return Scalar(1) / pow(-e);
    Scalar r(1);
    for (int i = 0; i < e; ++i) r = r * *this;
    return r;
}

Rational Scalar::eval(const std::map<std::string, Rational>& assignment) const {
    std::vector<const Rational*> vals(kMaxVars, nullptr);
    for (auto& [name, v] : assignment) {
        int idx = symbol_index(name);
        vals[idx] = &v;
    }
    Rational n = num_.eval(vals);
    Rational d(1);
    for (auto& [f, e] : den_) {
        Rational fv = f.eval(vals);
        for (int i = 0; i < e; ++i) d = d * fv;
    }
    if (d.is_zero()) throw std::domain_error("pole at the assignment: " + str());
    return n / d;
}

Scalar Scalar::subs(const std::map<std::string, Scalar>& s) const {
    std::vector<const Scalar*> vals(kMaxVars, nullptr);
    for (auto& [name, v] : s) vals[symbol_index(name)] = &v;
    auto sub_poly = [&](const Poly& p) {
        Scalar out;
        for (auto& t : p.terms()) {
            Scalar term(t.c);
            Poly rest(Rational(1));
            for (int i = 0; i < kMaxVars; ++i) {
                if (!t.m.e[i]) continue;
                if (vals[i])
                    term = term * vals[i]->pow(t.m.e[i]);
                else
                    rest = rest * Poly::var(i, t.m.e[i]);
            }
            out += term * Scalar(rest);
        }
        return out;
    };
    Scalar r = sub_poly(num_);
    for (auto& [f, e] : den_) r = r / sub_poly(f).pow(e);
    return r;
}

uint64_t Scalar::fingerprint() const {
    static std::vector<uint64_t> vals = [] {
        std::vector<uint64_t> v(kMaxVars);
        for (int i = 0; i < kMaxVars; ++i) v[i] = var_residue(i);
        return v;
    }();
    uint64_t n = num_.eval_mod(vals);
    uint64_t d = 1;
    for (auto& [f, e] : den_) d = modp::mul(d, modp::pow(f.eval_mod(vals), (uint64_t)e));
    if (d == 0) return n;  // astronomically unlikely; hashing only
    return modp::mul(n, modp::inv(d));
}

std::string Scalar::str() const {
    if (den_.empty()) return num_.str();
    return "(" + num_.str() + ") / (" + denominator().str() + ")";
}

std::string Scalar::canonical() const {
    if (den_.empty()) {
        // make the constant denominator explicit
        auto [c, pp] = num_.primitive();
        if (num_.is_zero()) return "0 / 1";
        Rational den(c.den());
        return num_.scaled(den).str() + " / " + den.str();
    }
    return num_.str() + " / " + denominator().str();
}

// ---------------------------------------------------------------- Context

Context::Context(std::initializer_list<std::string> names) : names_(names) {
    for (auto& n : names_) symbol_index(n);
}

Context::Context(const std::vector<std::string>& names) : names_(names.begin(), names.end()) {
    for (auto& n : names_) symbol_index(n);
}

Scalar Context::var(const std::string& name) const {
    if (!declared(name)) throw std::invalid_argument("undeclared indeterminate: " + name);
    return Scalar::sym(name);
}

void Context::check(const Scalar& s) const {
    for (int v : s.variables())
        if (!declared(symbol_name(v))) throw std::invalid_argument("indeterminate outside context: " + symbol_name(v));
}

}  // namespace ffsl3
