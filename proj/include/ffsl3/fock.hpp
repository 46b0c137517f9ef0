#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ffsl3/scalar.hpp"

namespace ffsl3 {

// Scalar-linear combination of Heisenberg generators. An empty coefficient
// vector is the zero exponent of any space.
struct Exponent {
    std::vector<Scalar> c;

    bool is_zero() const;
    Exponent operator+(const Exponent& o) const;
    Exponent operator-(const Exponent& o) const;
    Exponent operator-() const;
    friend Exponent operator*(const Scalar& s, const Exponent& e);
    bool operator==(const Exponent& o) const;
    const Scalar& at(size_t i) const;
    size_t size() const { return c.size(); }
};

// Abstract Bershadsky-Polyakov generators (acting on a highest-weight module
// factor). T stands for (k+3)L and is used at the critical level.
enum class BPGen { J = 0, Gp = 1, Gm = 2, L = 3 };

struct BPLetter {
    int gen;
    int mode;
    bool operator==(const BPLetter& o) const { return gen == o.gen && mode == o.mode; }
    bool operator<(const BPLetter& o) const { return gen != o.gen ? gen < o.gen : mode < o.mode; }
};

// Degree of a BP mode under the grading with weights J:1, G+:1, G-:2, L:2.
int bp_letter_degree(int gen, int mode);
bool bp_is_creation(int gen, int mode);

// The free-field algebra: Heisenberg generators with a Gram matrix, beta-gamma
// pairs, an optional cocycle form for the lattice part, and an optional
// abstract BP highest-weight factor.
struct Space {
    std::vector<std::string> heis;
    std::vector<std::vector<Scalar>> gram;
    std::vector<std::pair<std::string, std::string>> bg;
    // beta(z) gamma(w) ~ bg_sign / (z - w)
    int bg_sign = 1;
    // epsilon(mu, lambda) = (-1)^{mu^T C lambda}; empty means trivial.
    std::vector<std::vector<int>> cocycle;
    bool bp = false;
    Scalar bp_x, bp_y;  // J_(0) v = x v, L~_(1) v = y v

    int heis_index(const std::string& name) const;
    int beta_index(const std::string& name) const;   // pair index, or -1
    int gamma_index(const std::string& name) const;  // pair index, or -1
    Exponent gen(const std::string& name, const Scalar& coeff = Scalar(1)) const;
    Exponent exponent(const std::vector<std::pair<std::string, Scalar>>& terms) const;
    Scalar pairing(const Exponent& a, const Exponent& b) const;
    std::string exponent_str(const Exponent& e) const;
};

struct BasisVector {
    int sector = 0;
    std::vector<std::vector<int>> heis;   // per generator, descending parts n of g_(-n)
    std::vector<std::vector<int>> beta;   // per pair, descending n of beta_(-n)
    std::vector<std::vector<int>> gamma;  // per pair, descending n of gamma_(-n)
    std::vector<BPLetter> bp;             // PBW-ordered creation modes, leftmost first
};

struct FockState {
    std::vector<std::pair<uint32_t, Scalar>> terms;  // sorted by basis id, no zeros

    bool is_zero() const { return terms.empty(); }
    size_t size() const { return terms.size(); }
    FockState operator+(const FockState& o) const;
    FockState operator-(const FockState& o) const;
    friend FockState operator*(const Scalar& s, const FockState& v);
    bool operator==(const FockState& o) const { return (*this - o).is_zero(); }
    // coefficient of a basis vector (0 if absent)
    Scalar coeff(uint32_t id) const;
};

class StateBuilder {
public:
    void add(uint32_t id, const Scalar& c);
    void add(const FockState& s, const Scalar& c = Scalar(1));
    FockState finish();
    bool empty() const { return acc_.empty(); }

private:
    std::vector<std::pair<uint32_t, Scalar>> acc_;
};

// State space with interned sectors and basis vectors.
class Fock {
public:
    explicit Fock(Space space);
    const Space& space() const { return space_; }
    Space& mutable_space() { return space_; }

    int sector_id(const Exponent& e);
    const Exponent& sector(int id) const { return sectors_.at(id); }
    int sector_count() const { return (int)sectors_.size(); }

    uint32_t intern(const BasisVector& b);
    const BasisVector& basis(uint32_t id) const { return basis_.at(id); }
    // sum of all mode indices (probe level); BP letters count by degree
    int level(uint32_t id) const { return level_.at(id); }
    // grading used for annihilation bounds: gamma_(-n) counts n-1
    int weight(uint32_t id) const { return weight_.at(id); }

    FockState vacuum(const Exponent& sector = Exponent{});
    FockState basis_state(uint32_t id) const;

    // integer value of <mu, sector>; throws when not an integer
    long integral_pairing(const Exponent& mu, int sector);
    // cocycle sign epsilon(mu, sector)
    int cocycle_sign(const Exponent& mu, int sector);

    FockState heis_mode(int g, long n, uint32_t id);
    FockState heis_mode(const Exponent& h, long n, uint32_t id);
    FockState beta_mode(int pair, long n, uint32_t id);
    FockState gamma_mode(int pair, long n, uint32_t id);
    FockState vertex_mode(const Exponent& mu, long n, uint32_t id);

    FockState apply_linear(const FockState& s, const std::function<FockState(uint32_t)>& f);

    // All Fock basis vectors (no BP letters) of level <= max_level in a sector,
    // ordered by level and then by a fixed generation order.
    std::vector<uint32_t> enumerate_basis(const Exponent& sector, int max_level);

    std::string basis_str(uint32_t id) const;
    std::string state_str(const FockState& s) const;
    FockState truncate(const FockState& s, int max_level) const;

private:
    Space space_;
    std::vector<Exponent> sectors_;
    std::unordered_multimap<uint64_t, int> sector_index_;
    std::deque<BasisVector> basis_;  // deque: references stay valid while interning
    std::vector<int> level_, weight_;
    std::unordered_map<std::string, uint32_t> basis_index_;
    std::unordered_map<uint64_t, std::vector<FockState>> ann_memo_, cre_memo_;

    const std::vector<FockState>& annihilation_series(const Exponent& mu, int mu_id, uint32_t id, int top);
    const FockState& creation_series(const Exponent& mu, int mu_id, uint32_t id, long j);
};

}  // namespace ffsl3
