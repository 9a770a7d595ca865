#pragma once

#include "dvdm/grid.hpp"

namespace dvdm {

/// Time-step thresholds of the fixed-point solution theory:
/// dt < eps1 keeps the update map inside the ball ||.||_inf <= q r,
/// dt < eps2 makes it a contraction there.
struct StepBounds {
    double eps1 = 0.0;
    double eps2 = 0.0;
    double q = 0.0;
    double r = 0.0;
};

///   eps1 = (q-1) dx^3 / [ (|a|/6) dx^2 (q^2+q+1) r + (3/2)|b| (q+1) ]
///   eps2 =       dx^3 / [ (|a|/6) dx^2 (2q+1)   r + (3/2)|b|       ]
StepBounds step_size_bounds(double q, double r, double dx, double alpha, double beta);

/// Leading coefficient in front of the central-differenced flux:
/// alpha/6 for KdV and Ostrovsky, alpha/(p(p+1)) for generalized KdV.
double flux_leading_coefficient(const EquationSpec& spec);

/// Elementwise nonlinear flux argument, before the leading coefficient
/// and the central difference. KdV / Ostrovsky: a^2 + a b + b^2.
/// Generalized KdV: sum_{j=0}^{p} a^j b^{p-j}, the closed polynomial
/// form of (a^{p+1} - b^{p+1}) / (a - b).
State dvdm_flux(const EquationSpec& spec, const State& u_next, const State& u_curr);

/// Partial derivative of the flux argument with respect to u_next,
/// elementwise. Used by the Newton path.
State dvdm_flux_da(const EquationSpec& spec, const State& u_next, const State& u_curr);

/// R = d+_t u - RHS in d+_t units (1/time). R = 0 iff (u_curr, u_next)
/// satisfies the conservative scheme.
State scheme_residual(const EquationSpec& spec, const Grid& grid, const State& u_next,
                      const State& u_curr);

/// One-step update map whose fixed points are exactly the scheme
/// solutions: phi(w) = u_curr + dt * RHS(w, u_curr) with w only inside
/// the flux and the time-averaged linear terms.
State phi_map(const EquationSpec& spec, const Grid& grid, const State& u_curr,
              const State& w);

}  // namespace dvdm
