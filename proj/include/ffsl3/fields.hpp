#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ffsl3/fock.hpp"

namespace ffsl3 {

enum class FieldKind { Identity, Current, Beta, Gamma, BP, Vertex, Deriv, NormOrd, Scale, Sum };

struct FieldNode;
using Field = std::shared_ptr<const FieldNode>;

struct FieldNode {
    FieldKind kind;
    uint32_t id;
    int index = -1;           // beta-gamma pair or BP generator
    Exponent mu;              // Current: linear combination of generators; Vertex: exponent
    Scalar s;                 // Scale factor
    std::vector<Field> kids;  // Deriv/Scale: 1, NormOrd: 2, Sum: any
    std::vector<Exponent> shifts;  // sector shifts this field can produce
};

// Builders. Constructors fold scalars into currents and flatten sums; the
// zero field is the empty sum.
Field identity();
Field current(const Exponent& h);
Field current(const Space& sp, const std::string& name);
Field beta(int pair);
Field gamma(int pair);
Field beta(const Space& sp, const std::string& name);
Field gamma(const Space& sp, const std::string& name);
Field bp(BPGen g);
Field vertex(const Exponent& mu);
Field deriv(const Field& f, int times = 1);
// :A B:; more factors nest to the right, :A B C: = :A :B C::
Field nord(const Field& a, const Field& b);
Field nord(std::initializer_list<Field> fs);
Field scale(const Scalar& s, const Field& f);
Field sum(const std::vector<Field>& fs);
Field zero_field();
bool is_zero_field(const Field& f);

Field operator+(const Field& a, const Field& b);
Field operator-(const Field& a, const Field& b);
Field operator-(const Field& a);
Field operator*(const Scalar& s, const Field& f);
Field operator*(long long s, const Field& f);

std::string field_str(const Field& f, const Space& sp);

// Rebuilds a field with every atom replaced by the callback's result.
Field substitute(const Field& f, const std::function<Field(const FieldNode&)>& atom);

// Physics <-> mathematics mode index for a field of conformal weight d:
// A(n)_phys z^{-n-d} equals A_(n+d-1) z^{-(n+d-1)-1}.
inline long phys_to_math(long n, int weight) { return n + weight - 1; }

struct ModeTerm {
    Field field;
    long mode;
    Scalar coeff;
};

class OPETable {
public:
    void add_field(const std::string& name, Field f);
    Field field(const std::string& name) const;
    bool has_field(const std::string& name) const { return fields_.count(name) > 0; }
    // coeffs[j] is the coefficient at pole order j+1
    void set(const std::string& a, const std::string& b, std::vector<Field> coeffs);
    const std::vector<Field>* find(const std::string& a, const std::string& b) const;
    // fills every missing reversed pair from skew-symmetry
    void complete_by_skew_symmetry();
    const std::vector<std::string>& names() const { return order_; }

private:
    std::map<std::string, Field> fields_;
    std::vector<std::string> order_;
    std::map<std::pair<std::string, std::string>, std::vector<Field>> ope_;
};

// [A_(m), B_(n)] = sum_j C(m,j) (c_{j+1})_(m+n-j)
std::vector<ModeTerm> bracket_modes(const std::string& a, const std::string& b, long m, long n, const OPETable& t);

// Standard BP OPE table in terms of the abstract generators; the level is
// the given scalar.
OPETable bp_ope_table(const Scalar& k);

class Engine {
public:
    explicit Engine(Fock& fock, std::optional<OPETable> bp_table = std::nullopt);

    Fock& fock() { return fock_; }
    const Space& space() const { return fock_.space(); }

    FockState apply(const Field& f, long n, const FockState& s, std::optional<int> window = std::nullopt);
    FockState apply_basis(const Field& f, long n, uint32_t id);
    FockState apply_terms(const std::vector<ModeTerm>& terms, const FockState& s);
    // X_(n) v = 0 whenever n > weight(v) + max_shift(X, sector(v))
    int max_shift(const Field& f, int sector);

    // BP letters on the abstract highest-weight factor (math modes),
    // rightmost letter acts first.
    FockState hw_evaluate(const std::vector<BPLetter>& word, const FockState& v);

    void clear_cache();
    void set_cache_limit(size_t terms) { cache_limit_ = terms; }

private:
    struct Key {
        uint32_t node;
        int32_t mode;
        uint32_t basis;
        bool operator==(const Key& o) const { return node == o.node && mode == o.mode && basis == o.basis; }
    };
    struct KeyHash {
        size_t operator()(const Key& k) const {
            uint64_t h = (uint64_t)k.node * 0x9e3779b97f4a7c15ull ^ ((uint64_t)(uint32_t)k.mode << 32 | k.basis);
            return (size_t)(h * 0xbf58476d1ce4e5b9ull >> 7);
        }
    };

    FockState compute(const FieldNode& f, long n, uint32_t id);
    FockState bp_letter(int gen, long n, uint32_t id);
    void remember(const Key& k, const FockState& v);

    Fock& fock_;
    std::optional<OPETable> bp_;
    std::vector<Field> bp_atoms_;
    std::unordered_map<Key, FockState, KeyHash> memo_;
    std::unordered_map<uint64_t, int> shift_memo_;
    size_t cache_terms_ = 0;
    size_t cache_limit_ = 6'000'000;
};

struct CommutatorResidual {
    long m, n;
    size_t probe;
    FockState residual;
};

struct CommutatorReport {
    bool pass = true;
    size_t checked = 0;
    std::vector<CommutatorResidual> failures;
};

// Checks X_(m) Y_(n) - Y_(n) X_(m) = expected(m, n) on every probe.
CommutatorReport check_commutator(Engine& e, const Field& x, const Field& y,
                                  const std::function<std::vector<ModeTerm>(long, long)>& expected,
                                  const std::vector<std::pair<long, long>>& modes,
                                  const std::vector<FockState>& probes, std::optional<int> window = std::nullopt);

}  // namespace ffsl3
