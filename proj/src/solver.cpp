#include "dvdm/solver.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <cmath>

#include "dvdm/invariants.hpp"
#include "dvdm/operators.hpp"
#include "dvdm/schemes.hpp"

namespace dvdm {

NonConvergenceError::NonConvergenceError(int its, double last)
    : std::runtime_error("solver did not converge after " + std::to_string(its) +
                         " iterations (last update norm " + std::to_string(last) + ")"),
      iterations(its),
      last_update_norm(last) {}

GuardViolationError::GuardViolationError(double dt_, double e1, double e2)
    : std::runtime_error("time step " + std::to_string(dt_) +
                         " violates the contraction guard: eps1 = " + std::to_string(e1) +
                         ", eps2 = " + std::to_string(e2)),
      dt(dt_),
      eps1(e1),
      eps2(e2) {}

namespace {

double diff_sup(const State& a, const State& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) m = std::max(m, std::abs(a[k] - b[k]));
    return m;
}

bool all_finite(const State& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

struct IterationResult {
    State u_next;
    int iterations = 0;
    double final_update_norm = 0.0;
    double contraction_estimate = 0.0;
};

// Backtracking on the residual sup norm. Skipped for tiny updates,
// where the comparison is dominated by roundoff.
void damp_update(const EquationSpec& spec, const Grid& grid, const State& u_curr,
                 const State& w, const State& res, Eigen::VectorXd& dw, double tol) {
    double d = dw.lpNorm<Eigen::Infinity>();
    if (d <= 10.0 * tol) return;
    const double res_norm = sup_norm(res);
    for (int h = 0; h < 4; ++h) {
        State trial = w;
        for (int k = 0; k < grid.K; ++k) trial[k] += dw(k);
        if (sup_norm(scheme_residual(spec, grid, trial, u_curr)) <= res_norm) return;
        dw *= 0.5;
    }
}

IterationResult fixed_point_step(const EquationSpec& spec, const Grid& grid,
                                 const State& u_curr, const SolverConfig& cfg) {
    State w = u_curr;
    double prev_update = 0.0;
    IterationResult out;
    for (int i = 1; i <= cfg.max_iter; ++i) {
        State w_new = phi_map(spec, grid, u_curr, w);
        // overflowed iterates would otherwise masquerade as converged,
        // since max() drops NaN comparisons
        if (!all_finite(w_new)) throw NonConvergenceError(i, out.final_update_norm);
        const double d = diff_sup(w_new, w);
        w = std::move(w_new);
        out.iterations = i;
        out.final_update_norm = d;
        out.contraction_estimate = (i > 1 && prev_update > 0.0) ? d / prev_update : 0.0;
        prev_update = d;
        if (d <= cfg.tol) {
            out.u_next = std::move(w);
            return out;
        }
    }
    throw NonConvergenceError(cfg.max_iter, out.final_update_norm);
}

// Constant (state-independent) linear part of the Newton matrix:
//   -(beta/2) D1 D2  -(gamma/2) D1 Inv^2,  with the 1/dt diagonal.
// KdV and gKdV give a periodic banded matrix; the Ostrovsky nonlocal
// term is a dense circulant, so that family takes the dense path.
Eigen::MatrixXd dense_linear_part(const EquationSpec& spec, const Grid& grid) {
    const int K = grid.K;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(K, K);
    for (int j = 0; j < K; ++j) {
        State e(K, 0.0);
        e[j] = 1.0;
        State mu(K);
        for (int k = 0; k < K; ++k) mu[k] = 0.5 * e[k];
        State lin = stencil_apply(StencilKind::CDiff1,
                                  stencil_apply(StencilKind::CDiff2, mu, grid.dx), grid.dx);
        State nl(K, 0.0);
        if (spec.gamma != 0.0)
            nl = stencil_apply(StencilKind::CDiff1,
                               fd_inverse(fd_inverse(mu, grid.dx), grid.dx), grid.dx);
        for (int i = 0; i < K; ++i)
            m(i, j) = -spec.beta * lin[i] - spec.gamma * nl[i];
        m(j, j) += 1.0 / grid.dt;
    }
    return m;
}

IterationResult newton_step_dense(const EquationSpec& spec, const Grid& grid,
                                  const State& u_curr, const SolverConfig& cfg) {
    const int K = grid.K;
    const double cf = flux_leading_coefficient(spec);
    const Eigen::MatrixXd lin = dense_linear_part(spec, grid);

    State w = u_curr;
    IterationResult out;
    double prev_update = 0.0;
    for (int i = 1; i <= cfg.max_iter; ++i) {
        State res = scheme_residual(spec, grid, w, u_curr);
        State g = dvdm_flux_da(spec, w, u_curr);
        Eigen::MatrixXd jac = lin;
        for (int k = 0; k < K; ++k) {
            const int kp = (k + 1) % K;
            const int km = (k + K - 1) % K;
            jac(k, kp) += cf * g[kp] / (2.0 * grid.dx);
            jac(k, km) -= cf * g[km] / (2.0 * grid.dx);
        }
        Eigen::VectorXd rhs(K);
        for (int k = 0; k < K; ++k) rhs(k) = -res[k];
        Eigen::VectorXd dw = jac.partialPivLu().solve(rhs);
        if (!dw.allFinite()) throw NonConvergenceError(i, out.final_update_norm);
        damp_update(spec, grid, u_curr, w, res, dw, cfg.tol);

        double d = dw.lpNorm<Eigen::Infinity>();
        for (int k = 0; k < K; ++k) w[k] += dw(k);
        out.iterations = i;
        out.final_update_norm = d;
        out.contraction_estimate = (i > 1 && prev_update > 0.0) ? d / prev_update : 0.0;
        prev_update = d;
        if (d <= cfg.tol) {
            out.u_next = std::move(w);
            return out;
        }
    }
    throw NonConvergenceError(cfg.max_iter, out.final_update_norm);
}

IterationResult newton_step_sparse(const EquationSpec& spec, const Grid& grid,
                                   const State& u_curr, const SolverConfig& cfg) {
    const int K = grid.K;
    const double cf = flux_leading_coefficient(spec);
    const double dx = grid.dx;
    const double c3 = spec.beta / (4.0 * dx * dx * dx);

    State w = u_curr;
    IterationResult out;
    double prev_update = 0.0;
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(static_cast<std::size_t>(5 * K));
    for (int i = 1; i <= cfg.max_iter; ++i) {
        State res = scheme_residual(spec, grid, w, u_curr);
        State g = dvdm_flux_da(spec, w, u_curr);
        trips.clear();
        for (int k = 0; k < K; ++k) {
            const int kp = (k + 1) % K;
            const int km = (k + K - 1) % K;
            const int kpp = (k + 2) % K;
            const int kmm = (k + K - 2) % K;
            trips.emplace_back(k, k, 1.0 / grid.dt);
            // flux linearization through the first central difference
            trips.emplace_back(k, kp, cf * g[kp] / (2.0 * dx));
            trips.emplace_back(k, km, -cf * g[km] / (2.0 * dx));
            // -(beta/2) d<1> d<2>, stencil (+1, -2, +2, -1)/(2 dx^3)
            trips.emplace_back(k, kpp, -c3);
            trips.emplace_back(k, kp, 2.0 * c3);
            trips.emplace_back(k, km, -2.0 * c3);
            trips.emplace_back(k, kmm, c3);
        }
        Eigen::SparseMatrix<double> jac(K, K);
        jac.setFromTriplets(trips.begin(), trips.end());
        Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
        lu.compute(jac);
        if (lu.info() != Eigen::Success)
            throw NonConvergenceError(i, out.final_update_norm);
        Eigen::VectorXd rhs(K);
        for (int k = 0; k < K; ++k) rhs(k) = -res[k];
        Eigen::VectorXd dw = lu.solve(rhs);
        if (!dw.allFinite()) throw NonConvergenceError(i, out.final_update_norm);
        damp_update(spec, grid, u_curr, w, res, dw, cfg.tol);

        double d = dw.lpNorm<Eigen::Infinity>();
        for (int k = 0; k < K; ++k) w[k] += dw(k);
        out.iterations = i;
        out.final_update_norm = d;
        out.contraction_estimate = (i > 1 && prev_update > 0.0) ? d / prev_update : 0.0;
        prev_update = d;
        if (d <= cfg.tol) {
            out.u_next = std::move(w);
            return out;
        }
    }
    throw NonConvergenceError(cfg.max_iter, out.final_update_norm);
}

}  // namespace

std::pair<State, StepDiagnostics> advance(const EquationSpec& spec, const Grid& grid,
                                          const State& u_curr, const SolverConfig& cfg) {
    validate(spec);
    if (u_curr.size() != static_cast<std::size_t>(grid.K))
        throw std::invalid_argument("advance: state length does not match grid");
    if (!(cfg.tol > 0.0) || cfg.max_iter < 1)
        throw std::invalid_argument("advance: tol must be positive, max_iter >= 1");

    std::string warning;
    bool guard_satisfied = false;
    if (cfg.guard) {
        const StepBounds b =
            step_size_bounds(cfg.guard->q, cfg.guard->r, grid.dx, spec.alpha, spec.beta);
        const double lim = std::min(b.eps1, b.eps2);
        if (grid.dt < lim) {
            guard_satisfied = true;
        } else if (cfg.guard->enforce && spec.family == Family::KdV) {
            throw GuardViolationError(grid.dt, b.eps1, b.eps2);
        } else {
            warning = "dt exceeds min(eps1, eps2) = " + std::to_string(lim) +
                      "; contraction not guaranteed";
        }
        if (spec.family != Family::KdV && !warning.empty())
            warning += " (bounds proved for KdV only)";
    }

    IterationResult res;
    if (cfg.method == Method::FixedPoint) {
        res = fixed_point_step(spec, grid, u_curr, cfg);
    } else if (spec.family == Family::Ostrovsky && spec.gamma != 0.0) {
        res = newton_step_dense(spec, grid, u_curr, cfg);
    } else {
        res = newton_step_sparse(spec, grid, u_curr, cfg);
    }

    StepDiagnostics diag;
    diag.iterations = res.iterations;
    diag.final_update_norm = res.final_update_norm;
    diag.contraction_estimate = res.contraction_estimate;
    diag.sup_norm = sup_norm(res.u_next);
    diag.mass = mass(res.u_next, grid.dx);
    diag.energy = energy(spec, res.u_next, grid.dx);
    diag.l2 = l2_invariant(res.u_next, grid.dx);
    diag.warning = warning;
    if (guard_satisfied && cfg.guard && sup_norm(u_curr) <= cfg.guard->r &&
        diag.sup_norm > cfg.guard->q * cfg.guard->r) {
        diag.warning += (diag.warning.empty() ? "" : "; ");
        diag.warning += "local bound ||u_next||_inf <= q r violated";
    }
    return {std::move(res.u_next), std::move(diag)};
}

TimeSeries simulate(const EquationSpec& spec, const Grid& grid, const State& u0,
                    const SolverConfig& cfg) {
    if (u0.size() != static_cast<std::size_t>(grid.K))
        throw std::invalid_argument("simulate: initial state length does not match grid");
    TimeSeries ts;
    ts.grid = grid;
    ts.spec = spec;
    ts.states.reserve(static_cast<std::size_t>(grid.M) + 1);
    ts.diags.reserve(static_cast<std::size_t>(grid.M));
    ts.states.push_back(u0);
    for (int m = 0; m < grid.M; ++m) {
        try {
            auto [u_next, diag] = advance(spec, grid, ts.states.back(), cfg);
            ts.states.push_back(std::move(u_next));
            ts.diags.push_back(std::move(diag));
        } catch (const NonConvergenceError& e) {
            ts.failure = SimulationFailure{m, e.iterations, e.last_update_norm};
            break;
        }
    }
    return ts;
}

}  // namespace dvdm
