#include "dvdm/invariants.hpp"

#include <cmath>
#include <stdexcept>

#include "dvdm/operators.hpp"

namespace dvdm {

double mass(const State& v, double dx) {
    return detail::compensated_sum(v.size(), [&](std::size_t k) { return v[k] * dx; });
}

double l2_invariant(const State& v, double dx) {
    return inner_product(v, v, dx);
}

namespace {

double power_sum(const State& v, int exponent, double dx) {
    return detail::compensated_sum(v.size(), [&](std::size_t k) {
        double t = 1.0;
        for (int i = 0; i < exponent; ++i) t *= v[k];
        return t * dx;
    });
}

double grad_sq(const State& v, double dx) {
    State d = stencil_apply(StencilKind::FwdDiff, v, dx);
    return inner_product(d, d, dx);
}

// Nonlinear (plus nonlocal) coefficient-weighted part shared by energy
// and error_energy_A.
double nonquadratic_part(const EquationSpec& spec, const State& v, double dx) {
    switch (spec.family) {
        case Family::KdV:
            return spec.alpha / 6.0 * power_sum(v, 3, dx);
        case Family::Ostrovsky: {
            double s = spec.alpha / (3.0 * spec.beta) * power_sum(v, 3, dx);
            if (spec.gamma != 0.0) {
                State w = fd_inverse(v, dx);
                s += spec.gamma / spec.beta * inner_product(w, w, dx);
            }
            return s;
        }
        case Family::GeneralizedKdV:
            return 2.0 * spec.alpha /
                   (static_cast<double>(spec.p) * (spec.p + 1.0) * spec.beta) *
                   power_sum(v, spec.p + 1, dx);
    }
    return 0.0;
}

}  // namespace

double energy(const EquationSpec& spec, const State& v, double dx) {
    validate(spec);
    // KdV keeps the (alpha/6, beta/2) weights; the other two families
    // use the normalized form (the KdV energy times 2/beta).
    if (spec.family == Family::KdV)
        return nonquadratic_part(spec, v, dx) + 0.5 * spec.beta * grad_sq(v, dx);
    return nonquadratic_part(spec, v, dx) + grad_sq(v, dx);
}

InvariantReport invariant_report(const EquationSpec& spec, const State& v, double dx) {
    InvariantReport r;
    r.mass = mass(v, dx);
    r.energy = energy(spec, v, dx);
    r.l2 = l2_invariant(v, dx);
    r.sup = sup_norm(v);
    return r;
}

double error_energy_A(const EquationSpec& spec, const State& e, double dx) {
    validate(spec);
    if (spec.family == Family::KdV)
        return spec.alpha / (3.0 * spec.beta) * power_sum(e, 3, dx);
    return nonquadratic_part(spec, e, dx);
}

double theta_min(const EquationSpec& spec, double q, double r, double L) {
    validate(spec);
    if (!(q > 1.0)) throw std::invalid_argument("theta_min: q must exceed 1");
    if (!(r > 0.0)) throw std::invalid_argument("theta_min: r must be positive");
    const double a = std::abs(spec.alpha);
    const double b = std::abs(spec.beta);
    switch (spec.family) {
        case Family::KdV:
            return 1.0 + 2.0 * q * r * a / (3.0 * b);
        case Family::Ostrovsky:
            if (spec.gamma != 0.0 && !(L > 0.0))
                throw std::invalid_argument("theta_min: Ostrovsky bound needs L > 0");
            return 1.0 + (32.0 * a * q * r + 3.0 * std::abs(spec.gamma) * L * L) /
                             (48.0 * b);
        case Family::GeneralizedKdV: {
            const double p = spec.p;
            return 1.0 + std::pow(2.0, p) * a * std::pow(q * r, p - 1.0) /
                             (p * (p + 1.0) * b);
        }
    }
    return 1.0;
}

double modified_error_energy(const EquationSpec& spec, const State& e, double dx,
                             double theta) {
    State d = stencil_apply(StencilKind::FwdDiff, e, dx);
    return theta * inner_product(e, e, dx) + inner_product(d, d, dx) +
           error_energy_A(spec, e, dx);
}

}  // namespace dvdm
