#pragma once

#include <functional>
#include <string>
#include <vector>

#include "dvdm/grid.hpp"
#include "dvdm/solver.hpp"

namespace dvdm {

/// Space-time reference solution u(t, x).
using SpaceTimeFn = std::function<double(double t, double x)>;

/// Classical soliton (3c/alpha) sech^2( (1/2) sqrt(c/(-beta)) (x - c t - x0) ),
/// wrapped to the nearest L-periodic image of the phase. Requires c > 0,
/// beta < 0, alpha != 0.
double exact_soliton(double c, double x0, double alpha, double beta, double L, double t,
                     double x);

/// The same soliton as a callable, parameter-checked once.
SpaceTimeFn soliton_solution(double c, double x0, double alpha, double beta, double L);

/// Samples f(t, .) at the K nodes of the grid.
State sample(const SpaceTimeFn& f, const Grid& grid, double t);

/// Exact evolution for alpha = 0: per-mode phase rotation of u0 under
/// the linear dispersion (beta third derivative, plus the Ostrovsky
/// nonlocal term when gamma != 0).
State linear_exact_evolution(const EquationSpec& spec, const State& u0, const Grid& grid,
                             double t);

/// Fourier pseudospectral oracle: integrates the PDE from u0 on the
/// fine grid to time t with an integrating-factor Dormand-Prince pair
/// at local tolerance 1e-12, 2/3-rule dealiasing always on. Returns the
/// fine-grid solution; use restrict_state to land on a coarse grid.
State spectral_reference(const EquationSpec& spec, const State& u0_fine,
                         const Grid& grid_fine, double t);

/// Every (K_fine / K_coarse)-th node; K_fine must be a multiple of K_coarse.
State restrict_state(const State& fine, int K_coarse);

/// Local truncation error xi^(m): the scheme residual of the exact
/// solution sampled at levels m and m+1.
State truncation_error(const EquationSpec& spec, const Grid& grid,
                       const SpaceTimeFn& exact, int m);

/// h1_norm(u - ref).
double h1_error(const State& u, const State& ref, double dx);

struct ConvergenceRow {
    double dx = 0.0;
    double dt = 0.0;
    double h1_error = 0.0;
    double order_estimate = 0.0;  // NaN on the first row and after failures
    bool converged = false;
    double max_sup_norm = 0.0;  // max over accepted steps, for a-priori checks
};
using ConvergenceTable = std::vector<ConvergenceRow>;

/// Runs `levels` simulations, halving dx and dt together from the base
/// grid, and measures the final-time H1 error against `exact`. Levels
/// run concurrently on up to `threads` workers.
ConvergenceTable convergence_study(const EquationSpec& spec, const SpaceTimeFn& exact,
                                   const Grid& base_grid, int levels,
                                   const SolverConfig& cfg, int threads = 1);

struct GronwallReport {
    bool preconditions_ok = true;
    std::string reason;
    int premise_holds_through = -1;  // largest m with the premise inequality
    int first_failure_index = -1;    // -1 when the premise never fails
    bool conclusion_holds = false;   // v[m] <= 2 d T exp(2 c T) up to premise+1
};

/// Checks the discrete Gronwall premise d+_t v[m] <= c mu+_t v[m] + d
/// and the bound v[m] <= 2 d T exp(2 c T) on the premise range.
GronwallReport gronwall_check(const std::vector<double>& v, double c, double d,
                              double dt, double T);

struct TheoryConstants {
    double C1 = 0.0;
    double C2 = 0.0;
    double theta = 0.0;
    double Cqr_bound = 0.0;
    double dx_max = 0.0;
    bool dx_max_defined = false;
    std::string reason;  // set when dx_max is undefined
};

/// Evaluates the explicit constants of the convergence theory from the
/// supplied sup bounds of the target solution.
TheoryConstants theory_constants(const EquationSpec& spec, double q, double r,
                                 double sup_u, double sup_ux, double sup_uxx,
                                 double sup_ut, double L, double T, double c0);

}  // namespace dvdm
