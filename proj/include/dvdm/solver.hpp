#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dvdm/grid.hpp"

namespace dvdm {

enum class Method { FixedPoint, Newton };

/// Step-size guard derived from the fixed-point solution theory.
/// When enforce is set and the family is KdV, a step larger than
/// min(eps1, eps2) is an error; otherwise it only produces a warning
/// diagnostic (the bounds are proved for KdV only).
struct GuardParams {
    double q = 2.0;
    double r = 1.0;
    bool enforce = false;
};

struct SolverConfig {
    Method method = Method::FixedPoint;
    double tol = 1e-12;          // sup-norm iterate-difference tolerance
    int max_iter = 50;
    std::optional<GuardParams> guard;
};

struct StepDiagnostics {
    int iterations = 0;
    double final_update_norm = 0.0;
    double contraction_estimate = 0.0;  // ratio of the last two update norms
    double sup_norm = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    double l2 = 0.0;
    std::string warning;  // empty when none
};

class NonConvergenceError : public std::runtime_error {
public:
    NonConvergenceError(int iterations, double last_update_norm);
    int iterations;
    double last_update_norm;
};

class GuardViolationError : public std::runtime_error {
public:
    GuardViolationError(double dt, double eps1, double eps2);
    double dt, eps1, eps2;
};

struct SimulationFailure {
    int step = 0;  // index of the step that failed to converge
    int iterations = 0;
    double last_update_norm = 0.0;
};

struct TimeSeries {
    Grid grid;
    EquationSpec spec;
    std::vector<State> states;          // length M+1 on success
    std::vector<StepDiagnostics> diags; // one per accepted step
    std::optional<SimulationFailure> failure;
};

/// Advance the scheme one step from u_curr. FixedPoint iterates the
/// update map from w0 = u_curr; Newton runs damped Newton on the
/// residual with an analytic Jacobian. Both stop when the sup-norm
/// iterate difference drops to tol.
std::pair<State, StepDiagnostics> advance(const EquationSpec& spec, const Grid& grid,
                                          const State& u_curr, const SolverConfig& cfg);

/// M sequential steps with per-step diagnostics. On non-convergence the
/// partial series is returned with `failure` set instead of throwing.
TimeSeries simulate(const EquationSpec& spec, const Grid& grid, const State& u0,
                    const SolverConfig& cfg);

}  // namespace dvdm
