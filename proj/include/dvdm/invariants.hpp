#pragma once

#include "dvdm/grid.hpp"

namespace dvdm {

struct InvariantReport {
    double mass = 0.0;
    double energy = 0.0;
    double l2 = 0.0;
    double sup = 0.0;
};

/// sum v_k dx (compensated).
double mass(const State& v, double dx);

/// Discrete energy conserved by the scheme.
///   KdV:        (alpha/6) sum v^3 dx + (beta/2) ||d+ v||^2
///   Ostrovsky:  (alpha/(3 beta)) sum v^3 dx + ||d+ v||^2
///               + (gamma/beta) ||inv v||^2
///   gKdV:       (2 alpha/(p(p+1) beta)) sum v^{p+1} dx + ||d+ v||^2
double energy(const EquationSpec& spec, const State& v, double dx);

/// ||v||^2 = sum v_k^2 dx.
double l2_invariant(const State& v, double dx);

InvariantReport invariant_report(const EquationSpec& spec, const State& v, double dx);

/// Non-quadratic part of the (normalized) energy evaluated on an error
/// vector e; the compensated-energy argument bounds it by a multiple of
/// ||e||^2 inside the ball ||e||_inf <= 2 q r.
double error_energy_A(const EquationSpec& spec, const State& e, double dx);

/// Family-specific lower bound on the compensation weight theta.
/// L enters the Ostrovsky bound only (through ||inv|| <= L/4).
double theta_min(const EquationSpec& spec, double q, double r, double L = 0.0);

/// theta ||e||^2 + ||d+ e||^2 + error_energy_A.
double modified_error_energy(const EquationSpec& spec, const State& e, double dx,
                             double theta);

}  // namespace dvdm
