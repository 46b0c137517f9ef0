#pragma once

#include <string>
#include <vector>

#include "ffsl3/report.hpp"
#include "ffsl3/scalar.hpp"

namespace ffsl3 {

// Ready-made verification runs shared by the command line and the
// acceptance driver. Mode pairs range over [-window, window]^2 unless noted;
// probes are all basis states of level <= level.

struct SuiteSpec {
    Scalar k;
    long window = 2;
    int level = 1;
    // twisted sector e^{-d1/2-d2/2+l1 c1+l2 c2} instead of the vacuum (phi1 only)
    bool twisted = false;
    Scalar l1, l2;
};

// dict: "rho0" (Wakimoto), "rho0-bosonized", "phi0" or "phi1" (composed with rho1)
Report suite_affine(const std::string& dict, const SuiteSpec& s);
// rho1 in the free-field model; modes [-1, window]^2
Report suite_bp_ope(const SuiteSpec& s);
// which: "rho0" (c = 8k/(k+3), currents primary) or "pi" (L on Pi(0)^2, c = 4 + 8k)
Report suite_sugawara(const std::string& which, const SuiteSpec& s);
// e^x screening against rho0 in the bosonized model
Report suite_screening(const SuiteSpec& s);
// which: "phi0" (rho0 = phi0 o rho1 as fields), "phi0-sugawara", "phi1-sugawara"
Report suite_factorization(const std::string& which, const SuiteSpec& s);

const std::vector<std::string>& affine_dicts();

}  // namespace ffsl3
