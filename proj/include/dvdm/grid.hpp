#pragma once

#include <limits>
#include <string>
#include <vector>

namespace dvdm {

/// One time level of the numerical solution on a K-periodic grid,
/// indexed k = 0..K-1 with implicit extension v[k+K] = v[k].
using State = std::vector<double>;

/// Periodic space-time discretization: period L split into K cells,
/// horizon T split into M steps.
struct Grid {
    double L = 0.0;
    int K = 0;
    double dx = 0.0;
    double T = 0.0;
    int M = 0;
    double dt = 0.0;
};

/// Validates and builds a Grid. K must be at least 5 (the widest
/// stencil used, the first-times-second central difference, spans
/// five nodes).
Grid make_grid(double L, int K, double T, int M);

enum class Family { KdV, GeneralizedKdV, Ostrovsky };

/// Which PDE family is being solved and its parameters.
/// p is used by GeneralizedKdV only, gamma by Ostrovsky only.
struct EquationSpec {
    Family family = Family::KdV;
    double alpha = 6.0;
    double beta = -1.0;
    int p = 2;
    double gamma = 0.0;
};

/// Throws std::invalid_argument on beta == 0 or p < 1.
void validate(const EquationSpec& spec);

std::string family_name(Family family);

inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

/// Discrete Lebesgue norm: (sum |v_k|^p dx)^(1/p), or max |v_k| for p = inf.
double lp_norm(const State& v, double p, double dx);

/// <v, w> = sum v_k w_k dx. Compensated accumulation.
double inner_product(const State& v, const State& w, double dx);

/// (||v||^2 + ||d+ v||^2)^(1/2) with d+ the forward difference.
double h1_norm(const State& v, double dx);

/// L_hat = sqrt(2) * max{sqrt(L), 1/sqrt(L)}; ||v||_inf <= L_hat ||v||_H1.
double sobolev_constant(double L);

double sup_norm(const State& v);

namespace detail {
/// Kahan-compensated sum of f(0), ..., f(n-1).
template <class F>
double compensated_sum(std::size_t n, F&& f) {
    double s = 0.0, c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double y = f(i) - c;
        double t = s + y;
        c = (t - s) - y;
        s = t;
    }
    return s;
}
}  // namespace detail

}  // namespace dvdm
