#include "dvdm/schemes.hpp"

#include <cmath>
#include <stdexcept>

#include "dvdm/operators.hpp"

namespace dvdm {

StepBounds step_size_bounds(double q, double r, double dx, double alpha, double beta) {
    if (!(q > 1.0)) throw std::invalid_argument("step_size_bounds: q must exceed 1");
    if (!(r > 0.0)) throw std::invalid_argument("step_size_bounds: r must be positive");
    if (!(dx > 0.0)) throw std::invalid_argument("step_size_bounds: dx must be positive");
    const double a = std::abs(alpha);
    const double b = std::abs(beta);
    const double dx3 = dx * dx * dx;
    StepBounds out;
    out.q = q;
    out.r = r;
    out.eps1 = (q - 1.0) * dx3 /
               ((a / 6.0) * dx * dx * (q * q + q + 1.0) * r + 1.5 * b * (q + 1.0));
    out.eps2 = dx3 / ((a / 6.0) * dx * dx * (2.0 * q + 1.0) * r + 1.5 * b);
    return out;
}

double flux_leading_coefficient(const EquationSpec& spec) {
    if (spec.family == Family::GeneralizedKdV)
        return spec.alpha / (static_cast<double>(spec.p) * (spec.p + 1.0));
    return spec.alpha / 6.0;
}

State dvdm_flux(const EquationSpec& spec, const State& u_next, const State& u_curr) {
    if (u_next.size() != u_curr.size())
        throw std::invalid_argument("dvdm_flux: length mismatch");
    State out(u_next.size());
    if (spec.family == Family::GeneralizedKdV) {
        const int p = spec.p;
        for (std::size_t k = 0; k < out.size(); ++k) {
            const double a = u_next[k], b = u_curr[k];
            double t = 0.0, apow = 1.0;
            for (int i = 0; i <= p; ++i) {
                t = t * b + apow;
                apow *= a;
            }
            out[k] = t;
        }
    } else {
        for (std::size_t k = 0; k < out.size(); ++k) {
            const double a = u_next[k], b = u_curr[k];
            out[k] = a * a + a * b + b * b;
        }
    }
    return out;
}

State dvdm_flux_da(const EquationSpec& spec, const State& u_next, const State& u_curr) {
    State out(u_next.size());
    if (spec.family == Family::GeneralizedKdV) {
        const int p = spec.p;
        for (std::size_t k = 0; k < out.size(); ++k) {
            const double a = u_next[k], b = u_curr[k];
            double t = 0.0, apow = 1.0;
            for (int i = 0; i < p; ++i) {
                t = t * b + (i + 1.0) * apow;
                apow *= a;
            }
            out[k] = t;
        }
    } else {
        for (std::size_t k = 0; k < out.size(); ++k)
            out[k] = 2.0 * u_next[k] + u_curr[k];
    }
    return out;
}

namespace {

// RHS of the scheme with `a` in the flux and in the time averages:
//   -cf d<1>(flux) + beta d<1> d<2> mu + gamma d<1> inv^2 mu
State scheme_rhs(const EquationSpec& spec, const Grid& grid, const State& a,
                 const State& b) {
    const double dx = grid.dx;
    const double cf = flux_leading_coefficient(spec);
    State mu(a.size());
    for (std::size_t k = 0; k < mu.size(); ++k) mu[k] = 0.5 * (a[k] + b[k]);

    State flux = dvdm_flux(spec, a, b);
    State rhs = stencil_apply(StencilKind::CDiff1, flux, dx);
    for (double& x : rhs) x *= -cf;

    State lin = stencil_apply(StencilKind::CDiff1,
                              stencil_apply(StencilKind::CDiff2, mu, dx), dx);
    for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] += spec.beta * lin[k];

    if (spec.family == Family::Ostrovsky && spec.gamma != 0.0) {
        State nl = stencil_apply(StencilKind::CDiff1,
                                 fd_inverse(fd_inverse(mu, dx), dx), dx);
        for (std::size_t k = 0; k < rhs.size(); ++k) rhs[k] += spec.gamma * nl[k];
    }
    return rhs;
}

}  // namespace

State scheme_residual(const EquationSpec& spec, const Grid& grid, const State& u_next,
                      const State& u_curr) {
    State rhs = scheme_rhs(spec, grid, u_next, u_curr);
    State res(u_next.size());
    for (std::size_t k = 0; k < res.size(); ++k)
        res[k] = (u_next[k] - u_curr[k]) / grid.dt - rhs[k];
    return res;
}

State phi_map(const EquationSpec& spec, const Grid& grid, const State& u_curr,
              const State& w) {
    State rhs = scheme_rhs(spec, grid, w, u_curr);
    State out(w.size());
    for (std::size_t k = 0; k < out.size(); ++k)
        out[k] = u_curr[k] + grid.dt * rhs[k];
    return out;
}

}  // namespace dvdm
