#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "ffsl3/fields.hpp"
#include "ffsl3/report.hpp"
#include "ffsl3/sectors.hpp"

namespace ffsl3 {

// ---- q-series

// sum of coeff * q^{offset+n} z1^{z1+i} z2^{z2+j} over terms (n,i,j)
struct QSeries {
    Scalar offset, z1, z2;
    std::string grading = "mu";  // "mu": z_i^{mu_i(0)}; "h": z_i^{h_i(0)}
    std::map<std::array<long, 3>, Scalar> terms;

    Scalar coeff(long n, long i = 0, long j = 0) const;
    void add(long n, long i, long j, const Scalar& c);
    QSeries truncated(long max_n) const;
};

// a and b describe the same series; on failure why says where they differ
bool same_series(const QSeries& a, const QSeries& b, std::string* why = nullptr);
std::string series_str(const QSeries& s);
// Compares truncated series on the z-monomials both contain, each over the
// first `depth` q powers above its lowest one. Returns the number of
// monomials compared; mismatches are appended to *why.
size_t compare_on_common(const QSeries& a, const QSeries& b, long depth, std::string* why);

// q^{-1/6} sum p4(n) q^n, p4 counting 4-coloured partitions
QSeries eta_inv_pow4(int order);

// z1^{z1} z2^{z2} q^{q_offset} delta / eta^4, the delta supported on the
// lattice spanned by the two exponent vectors in support
struct CharObject {
    Scalar z1, z2, q_offset;
    std::array<std::array<long, 2>, 2> support{};
    int eta_power = -4;
};

// closed form, only for (r1, r2) = (-1, -1)
CharObject char_pi(const PiModuleDesc& desc, const Scalar& k);
// expansion over the support points n1 v1 + n2 v2 with |n1|, |n2| <= window
QSeries expand(const CharObject& ch, int order, long window);
// trace of q^{L(0) - c/24} z1^{mu1(0)} z2^{mu2(0)} over the sectors with
// charge shifts in [-window, window]^2, oscillator levels <= max_level
QSeries char_bruteforce(const PiModuleDesc& desc, const Scalar& k, int max_level, long window);

// ---- spectral flow

enum class Flow { Lambda, Sigma, Gamma };
enum class TableConvention { Derived, Printed };

struct FlowParams {
    long a = 0, b = 0;  // lambda^{a,b}, gamma^{a,b}
    long l = 0;         // sigma^l
};

// one term coeff * z^{zexp} F(z); field "1" is the identity
struct FlowTerm {
    long zexp;
    std::string field;
    Scalar coeff;
};
using FlowLaw = std::vector<FlowTerm>;

std::vector<std::string> flow_fields(Flow which);
FlowLaw sf_field(const FlowParams& fp, Flow which, const std::string& field, const Scalar& k,
                 TableConvention conv = TableConvention::Derived);
// the law of `second` applied after `first` on the terms of law
FlowLaw compose(const FlowLaw& law, const FlowParams& second, Flow which, const Scalar& k,
                TableConvention conv = TableConvention::Derived);
FlowLaw normalize(FlowLaw law);
std::string law_str(const FlowLaw& law);

// lambda^{a,b} on Pi modules: shift of the sector by a mu1 + b mu2
PiModuleDesc sf_module(const FlowParams& fp, const PiModuleDesc& desc, const Scalar& k,
                       TableConvention conv = TableConvention::Derived);
// ch[lambda^{a,b} M] from ch[M] ("mu" grading) or ch[gamma^{a,b} M] ("h" grading)
QSeries sf_char(const FlowParams& fp, const QSeries& ch, const Scalar& k,
                TableConvention conv = TableConvention::Derived);

// Delta(h, z) A = z^{-h(0)} exp(sum_{n>=1} (-1)^n h(n) z^{-n} / n) A as a list
// of (exponent of z, state), A split into h(0) eigencomponents.
std::vector<std::pair<Scalar, FockState>> li_delta_apply(Engine& e, const Field& h, const FockState& a,
                                                         int max_mode = 6);

// each table line against li_delta_apply on the vacuum states of the fields
Report verify_flow_table(Flow which, const FlowParams& fp, const Scalar& k,
                         TableConvention conv = TableConvention::Derived);
// lambda^{a,b} as modes on Pi probes: A(n) U s = U (lambda^{-a,-b} A)(n) s,
// U the sector shift onto sf_module
Report verify_lambda_modes(const FlowParams& fp, const PiModuleDesc& desc, const Scalar& k, int max_level,
                           long mode_window);
// gamma^{a,b} = sigma^{b-2a} (x) lambda^{a,b}
Report verify_flow_factorization(const FlowParams& fp, const Scalar& k);

}  // namespace ffsl3
