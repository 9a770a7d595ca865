#include "dvdm/grid.hpp"

#include <cmath>
#include <stdexcept>

#include "dvdm/operators.hpp"

namespace dvdm {

Grid make_grid(double L, int K, double T, int M) {
    if (!(L > 0.0)) throw std::invalid_argument("make_grid: L must be positive");
    if (!(T > 0.0)) throw std::invalid_argument("make_grid: T must be positive");
    if (K < 5) throw std::invalid_argument("make_grid: K must be at least 5");
    if (M < 1) throw std::invalid_argument("make_grid: M must be at least 1");
    Grid g;
    g.L = L;
    g.K = K;
    g.dx = L / K;
    g.T = T;
    g.M = M;
    g.dt = T / M;
    return g;
}

void validate(const EquationSpec& spec) {
    if (spec.beta == 0.0) throw std::invalid_argument("EquationSpec: beta must be nonzero");
    if (spec.family == Family::GeneralizedKdV && spec.p < 1)
        throw std::invalid_argument("EquationSpec: p must be at least 1");
}

std::string family_name(Family family) {
    switch (family) {
        case Family::KdV: return "kdv";
        case Family::GeneralizedKdV: return "gkdv";
        case Family::Ostrovsky: return "ostrovsky";
    }
    return "?";
}

double lp_norm(const State& v, double p, double dx) {
    if (p < 1.0) throw std::invalid_argument("lp_norm: p must be at least 1");
    if (p == kInfNorm) return sup_norm(v);
    double s = detail::compensated_sum(v.size(), [&](std::size_t k) {
        return std::pow(std::abs(v[k]), p) * dx;
    });
    return std::pow(s, 1.0 / p);
}

double inner_product(const State& v, const State& w, double dx) {
    if (v.size() != w.size())
        throw std::invalid_argument("inner_product: length mismatch");
    return detail::compensated_sum(v.size(),
                                   [&](std::size_t k) { return v[k] * w[k] * dx; });
}

double h1_norm(const State& v, double dx) {
    State d = stencil_apply(StencilKind::FwdDiff, v, dx);
    double a = inner_product(v, v, dx);
    double b = inner_product(d, d, dx);
    return std::sqrt(a + b);
}

double sobolev_constant(double L) {
    double s = std::sqrt(L);
    return std::sqrt(2.0) * std::max(s, 1.0 / s);
}

double sup_norm(const State& v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

}  // namespace dvdm
