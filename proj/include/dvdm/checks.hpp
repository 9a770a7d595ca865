#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace dvdm {

/// Outcome of one randomized property suite entry. `worst` is the
/// largest relative residual (identities) or the largest violation
/// (inequalities; 0 means no violation) observed over all samples.
struct PropertyResult {
    std::string name;
    bool pass = false;
    double worst = 0.0;
    double tolerance = 0.0;
};

/// Operator algebra identities (commutation, splittings, product rule,
/// skew-symmetry, the summation-by-parts reduction identity), 100
/// random pairs for each K in {5, 8, 64, 257} at 1e-13 relative.
std::vector<PropertyResult> check_operators(std::uint64_t seed);

/// Norm and inner-product inequalities: the discrete Sobolev bound on
/// 1000 random vectors per (K, L), Cauchy-Schwarz-type bounds, flux
/// symmetry, and the KdV / gKdV(p=2) residual agreement.
std::vector<PropertyResult> check_invariants(std::uint64_t seed);

/// Compensated-energy nonnegativity for all three families, the
/// |A| bounds, and the generalized-inverse norm and composition
/// properties.
std::vector<PropertyResult> check_bounds(std::uint64_t seed);

}  // namespace dvdm
