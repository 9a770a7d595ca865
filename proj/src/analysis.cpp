#include "dvdm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <future>
#include <numbers>
#include <stdexcept>

#include "dvdm/fft.hpp"
#include "dvdm/invariants.hpp"
#include "dvdm/operators.hpp"
#include "dvdm/schemes.hpp"

namespace dvdm {

namespace {

void check_soliton_params(double c, double alpha, double beta) {
    if (!(c > 0.0)) throw std::invalid_argument("soliton: c must be positive");
    if (!(beta < 0.0)) throw std::invalid_argument("soliton: beta must be negative");
    if (alpha == 0.0) throw std::invalid_argument("soliton: alpha must be nonzero");
}

double sech(double x) { return 1.0 / std::cosh(x); }

}  // namespace

double exact_soliton(double c, double x0, double alpha, double beta, double L, double t,
                     double x) {
    check_soliton_params(c, alpha, beta);
    double s = x - c * t - x0;
    s -= L * std::round(s / L);  // nearest periodic image; tails at |s| = L/2 are negligible
    const double k = 0.5 * std::sqrt(c / (-beta));
    const double sh = sech(k * s);
    return (3.0 * c / alpha) * sh * sh;
}

SpaceTimeFn soliton_solution(double c, double x0, double alpha, double beta, double L) {
    check_soliton_params(c, alpha, beta);
    return [=](double t, double x) { return exact_soliton(c, x0, alpha, beta, L, t, x); };
}

State sample(const SpaceTimeFn& f, const Grid& grid, double t) {
    State v(static_cast<std::size_t>(grid.K));
    for (int k = 0; k < grid.K; ++k) v[k] = f(t, k * grid.dx);
    return v;
}

namespace {

// Signed wavenumbers 2 pi j' / L; the Nyquist mode (even K) is left at
// zero so real data stays real under the phase rotations below.
std::vector<double> wavenumbers(int K, double L) {
    std::vector<double> kappa(static_cast<std::size_t>(K), 0.0);
    for (int j = 0; j < K; ++j) {
        int js = (j <= K / 2) ? j : j - K;
        if (K % 2 == 0 && j == K / 2) js = 0;
        kappa[j] = 2.0 * std::numbers::pi * js / L;
    }
    return kappa;
}

// Linear dispersion relation: u_t = beta u_xxx (+ gamma dx^-1 u).
std::vector<std::complex<double>> dispersion(const EquationSpec& spec,
                                             const std::vector<double>& kappa) {
    std::vector<std::complex<double>> lambda(kappa.size());
    for (std::size_t j = 0; j < kappa.size(); ++j) {
        const double k = kappa[j];
        double omega = -spec.beta * k * k * k;
        if (spec.family == Family::Ostrovsky && spec.gamma != 0.0 && k != 0.0)
            omega -= spec.gamma / k;
        lambda[j] = std::complex<double>(0.0, omega);
    }
    return lambda;
}

}  // namespace

State linear_exact_evolution(const EquationSpec& spec, const State& u0, const Grid& grid,
                             double t) {
    auto kappa = wavenumbers(grid.K, grid.L);
    auto lambda = dispersion(spec, kappa);
    auto a = dft_of_real(u0);
    for (std::size_t j = 0; j < a.size(); ++j) a[j] *= std::exp(lambda[j] * t);
    return idft_to_real(std::move(a));
}

namespace {

using CVec = std::vector<std::complex<double>>;

struct PseudoSpectral {
    EquationSpec spec;
    int K;
    std::vector<double> kappa;
    std::vector<std::complex<double>> lambda;
    std::vector<bool> keep;  // 2/3-rule mask

    PseudoSpectral(const EquationSpec& s, const Grid& g)
        : spec(s), K(g.K), kappa(wavenumbers(g.K, g.L)), lambda(dispersion(s, kappa)),
          keep(static_cast<std::size_t>(g.K), true) {
        for (int j = 0; j < K; ++j) {
            int js = (j <= K / 2) ? j : j - K;
            if (std::abs(js) > K / 3) keep[j] = false;
        }
    }

    double f_of(double u) const {
        if (spec.family == Family::GeneralizedKdV) {
            double t = u;
            for (int i = 1; i < spec.p; ++i) t *= u;
            return spec.alpha * t / spec.p;
        }
        return 0.5 * spec.alpha * u * u;  // KdV and Ostrovsky
    }

    // Nonlinear term -alpha (f(u))_x in Fourier space, dealiased.
    CVec nonlinear(const CVec& uhat) const {
        CVec a = uhat;
        for (int j = 0; j < K; ++j)
            if (!keep[j]) a[j] = 0.0;
        State u = idft_to_real(std::move(a));
        for (double& x : u) x = f_of(x);
        CVec fhat = dft_of_real(u);
        for (int j = 0; j < K; ++j) {
            fhat[j] = keep[j] ? -std::complex<double>(0.0, kappa[j]) * fhat[j]
                              : std::complex<double>(0.0);
        }
        return fhat;
    }
};

// Dormand-Prince RK5(4)7M tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB5[7] = {35.0 / 384,      0.0,        500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784,  11.0 / 84,  0.0};
constexpr double kB4[7] = {5179.0 / 57600,  0.0,        7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

}  // namespace

State spectral_reference(const EquationSpec& spec, const State& u0_fine,
                         const Grid& grid_fine, double t) {
    validate(spec);
    const int K = grid_fine.K;
    if (u0_fine.size() != static_cast<std::size_t>(K))
        throw std::invalid_argument("spectral_reference: state length mismatch");
    PseudoSpectral ps(spec, grid_fine);

    CVec uhat = dft_of_real(u0_fine);
    if (t == 0.0) return u0_fine;

    const double rtol = 1e-12;
    double u_scale = std::max(1.0, sup_norm(u0_fine)) * K;  // DFT coefficient scale
    double time = 0.0;
    double h = std::min(t, 1e-4);
    long evaluations = 0;
    const long eval_cap = 100000000;

    // Integrating factor: y(tau) = exp(-lambda tau) uhat(t0 + tau), so the
    // stiff dispersion is handled exactly and only the nonlinear term is
    // stepped. All lambda are imaginary, so the phase factors have unit
    // modulus.
    CVec stage_k[7];
    while (time < t) {
        h = std::min(h, t - time);
        // phase factors exp(lambda c_i h) and exp(lambda h)
        CVec eh(uhat.size());
        CVec ec[7];
        for (int i = 0; i < 7; ++i) ec[i].resize(uhat.size());
        for (std::size_t j = 0; j < uhat.size(); ++j) {
            eh[j] = std::exp(ps.lambda[j] * h);
            for (int i = 0; i < 7; ++i) ec[i][j] = std::exp(ps.lambda[j] * (kC[i] * h));
        }

        for (int i = 0; i < 7; ++i) {
            CVec yi = uhat;  // y at tau=0 equals uhat
            for (int l = 0; l < i; ++l) {
                if (kA[i][l] == 0.0) continue;
                for (std::size_t j = 0; j < yi.size(); ++j)
                    yi[j] += h * kA[i][l] * stage_k[l][j];
            }
            // transform to physical time, evaluate, transform back
            CVec ui(yi.size());
            for (std::size_t j = 0; j < yi.size(); ++j) ui[j] = ec[i][j] * yi[j];
            CVec n = ps.nonlinear(ui);
            for (std::size_t j = 0; j < n.size(); ++j) n[j] = std::conj(ec[i][j]) * n[j];
            stage_k[i] = std::move(n);
            ++evaluations;
        }
        if (evaluations > eval_cap)
            throw std::runtime_error("spectral_reference: step count cap exceeded");

        double err = 0.0;
        CVec ynew = uhat;
        for (std::size_t j = 0; j < uhat.size(); ++j) {
            std::complex<double> acc5 = 0.0, acc4 = 0.0;
            for (int i = 0; i < 7; ++i) {
                acc5 += kB5[i] * stage_k[i][j];
                acc4 += kB4[i] * stage_k[i][j];
            }
            ynew[j] += h * acc5;
            err = std::max(err, std::abs(h * (acc5 - acc4)));
        }
        err /= u_scale;
        if (err <= rtol) {
            for (std::size_t j = 0; j < uhat.size(); ++j) uhat[j] = eh[j] * ynew[j];
            time += h;
        }
        const double factor =
            (err > 0.0) ? 0.9 * std::pow(rtol / err, 0.2) : 5.0;
        h *= std::clamp(factor, 0.2, 5.0);
    }
    return idft_to_real(std::move(uhat));
}

State restrict_state(const State& fine, int K_coarse) {
    if (K_coarse < 1 || fine.size() % static_cast<std::size_t>(K_coarse) != 0)
        throw std::invalid_argument("restrict_state: K_coarse must divide the fine size");
    const std::size_t stride = fine.size() / static_cast<std::size_t>(K_coarse);
    State out(static_cast<std::size_t>(K_coarse));
    for (int k = 0; k < K_coarse; ++k) out[k] = fine[static_cast<std::size_t>(k) * stride];
    return out;
}

State truncation_error(const EquationSpec& spec, const Grid& grid, const SpaceTimeFn& exact,
                       int m) {
    State um = sample(exact, grid, m * grid.dt);
    State up = sample(exact, grid, (m + 1) * grid.dt);
    return scheme_residual(spec, grid, up, um);
}

double h1_error(const State& u, const State& ref, double dx) {
    if (u.size() != ref.size()) throw std::invalid_argument("h1_error: length mismatch");
    State e(u.size());
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = u[k] - ref[k];
    return h1_norm(e, dx);
}

ConvergenceTable convergence_study(const EquationSpec& spec, const SpaceTimeFn& exact,
                                   const Grid& base_grid, int levels,
                                   const SolverConfig& cfg, int threads) {
    if (levels < 2) throw std::invalid_argument("convergence_study: levels must be >= 2");
    ConvergenceTable table(static_cast<std::size_t>(levels));

    auto run_level = [&](int lvl) {
        const Grid g = make_grid(base_grid.L, base_grid.K << lvl, base_grid.T,
                                 base_grid.M << lvl);
        ConvergenceRow row;
        row.dx = g.dx;
        row.dt = g.dt;
        row.order_estimate = std::nan("");
        State u0 = sample(exact, g, 0.0);
        TimeSeries ts = simulate(spec, g, u0, cfg);
        for (const auto& d : ts.diags) row.max_sup_norm = std::max(row.max_sup_norm, d.sup_norm);
        if (!ts.failure) {
            row.converged = true;
            row.h1_error = h1_error(ts.states.back(), sample(exact, g, g.T), g.dx);
        } else {
            row.h1_error = std::nan("");
        }
        return row;
    };

    threads = std::max(1, threads);
    for (int start = 0; start < levels; start += threads) {
        std::vector<std::future<ConvergenceRow>> futs;
        for (int lvl = start; lvl < std::min(levels, start + threads); ++lvl)
            futs.push_back(std::async(std::launch::async, run_level, lvl));
        for (int i = 0; i < static_cast<int>(futs.size()); ++i)
            table[static_cast<std::size_t>(start + i)] = futs[static_cast<std::size_t>(i)].get();
    }

    for (int lvl = 1; lvl < levels; ++lvl) {
        auto& prev = table[static_cast<std::size_t>(lvl - 1)];
        auto& row = table[static_cast<std::size_t>(lvl)];
        if (prev.converged && row.converged && prev.h1_error > 0.0 && row.h1_error > 0.0)
            row.order_estimate = std::log2(prev.h1_error / row.h1_error);
    }
    return table;
}

GronwallReport gronwall_check(const std::vector<double>& v, double c, double d, double dt,
                              double T) {
    GronwallReport rep;
    if (!(c > 0.0) || !(d > 0.0)) {
        rep.preconditions_ok = false;
        rep.reason = "c and d must be positive";
        return rep;
    }
    if (v.empty() || v.front() != 0.0) {
        rep.preconditions_ok = false;
        rep.reason = "v must start at 0";
        return rep;
    }
    for (double x : v) {
        if (x < 0.0) {
            rep.preconditions_ok = false;
            rep.reason = "v must be nonnegative";
            return rep;
        }
    }

    const int steps = static_cast<int>(v.size()) - 1;
    rep.premise_holds_through = -1;
    for (int m = 0; m < steps; ++m) {
        const double lhs = (v[static_cast<std::size_t>(m) + 1] - v[static_cast<std::size_t>(m)]) / dt;
        const double rhs = c * 0.5 * (v[static_cast<std::size_t>(m) + 1] + v[static_cast<std::size_t>(m)]) + d;
        if (lhs <= rhs * (1.0 + 1e-12) + 1e-15) {
            rep.premise_holds_through = m;
        } else {
            rep.first_failure_index = m;
            break;
        }
    }
    const double bound = 2.0 * d * T * std::exp(2.0 * c * T);
    rep.conclusion_holds = true;
    const int last = std::min(steps, rep.premise_holds_through + 1);
    for (int m = 0; m <= last; ++m) {
        if (v[static_cast<std::size_t>(m)] > bound) {
            rep.conclusion_holds = false;
            break;
        }
    }
    return rep;
}

TheoryConstants theory_constants(const EquationSpec& spec, double q, double r,
                                 double sup_u, double sup_ux, double sup_uxx,
                                 double sup_ut, double L, double T, double c0) {
    if (!(q > 1.0)) throw std::invalid_argument("theory_constants: q must exceed 1");
    const double a = std::abs(spec.alpha);
    const double b = std::abs(spec.beta);
    TheoryConstants tc;
    tc.C1 = std::max(3.0 * a * (2.0 * q * q + 1.0) * r * r + 1.0, a / 2.0);
    const double branch1 = 6.0 * a / b * (1.0 + 2.0 * a) * q * q * r * r +
                           a * a / (2.0 * b) * sup_ux * sup_ux +
                           a * (2.0 + sup_uxx * sup_uxx);
    const double branch2 = 1.0 + a * a / (2.0 * b) * r * r +
                           a * (1.5 * sup_ux * sup_ux + (2.0 / 3.0) * sup_ut * sup_ut +
                                2.0 / 3.0);
    tc.C2 = std::max(branch1, branch2);
    tc.theta = theta_min(spec, q, r, L);
    tc.Cqr_bound = std::sqrt(2.0 * (a / (6.0 * b) + tc.theta) * c0 * c0 * T *
                             std::exp(2.0 * (tc.theta * tc.C1 + tc.C2) * T));
    if (r > sup_u && std::isfinite(tc.Cqr_bound) && tc.Cqr_bound > 0.0) {
        tc.dx_max = std::sqrt((r - sup_u) / (2.0 * sobolev_constant(L) * tc.Cqr_bound));
        tc.dx_max_defined = true;
    } else {
        tc.dx_max = std::nan("");
        tc.reason = (r > sup_u) ? "Gronwall constant overflowed or vanished"
                                : "r must exceed sup|u|";
    }
    return tc;
}

}  // namespace dvdm
