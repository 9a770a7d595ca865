#include "dvdm/operators.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "dvdm/fft.hpp"

namespace dvdm {

State stencil_apply(StencilKind kind, const State& v, double dx) {
    const std::size_t n = v.size();
    State out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double vm = v[k == 0 ? n - 1 : k - 1];
        const double v0 = v[k];
        const double vp = v[k + 1 == n ? 0 : k + 1];
        switch (kind) {
            case StencilKind::FwdDiff: out[k] = (vp - v0) / dx; break;
            case StencilKind::BwdDiff: out[k] = (v0 - vm) / dx; break;
            case StencilKind::CDiff1: out[k] = (vp - vm) / (2.0 * dx); break;
            case StencilKind::CDiff2: out[k] = (vp - 2.0 * v0 + vm) / (dx * dx); break;
            case StencilKind::FwdAvgSpace: out[k] = 0.5 * (vp + v0); break;
            case StencilKind::CAvg1: out[k] = 0.5 * (vp + vm); break;
        }
    }
    return out;
}

State temporal_pair(TemporalOp op, const State& u_next, const State& u_curr, double dt) {
    if (u_next.size() != u_curr.size())
        throw std::invalid_argument("temporal_pair: length mismatch");
    State out(u_next.size());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = (op == TemporalOp::FwdDiffT) ? (u_next[k] - u_curr[k]) / dt
                                              : 0.5 * (u_next[k] + u_curr[k]);
    }
    return out;
}

State fd_inverse(const State& v, double dx) {
    const std::size_t n = v.size();
    auto a = dft_of_real(v);
    for (std::size_t j = 0; j < n; ++j) {
        const double s = std::sin(2.0 * std::numbers::pi * static_cast<double>(j) /
                                  static_cast<double>(n)) / dx;
        if (s == 0.0) {
            a[j] = 0.0;  // mean mode, and Nyquist when K is even
        } else {
            a[j] /= std::complex<double>(0.0, s);
        }
    }
    return idft_to_real(std::move(a));
}

double operator_norm_estimate(const LinearOp& op, int K) {
    const std::size_t n = static_cast<std::size_t>(K);
    // Materialize the matrix column by column.
    std::vector<State> cols(n);
    for (std::size_t j = 0; j < n; ++j) {
        State e(n, 0.0);
        e[j] = 1.0;
        cols[j] = op(e);
    }
    auto apply = [&](const State& x) {
        State y(n, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) y[i] += cols[j][i] * x[j];
        return y;
    };
    auto apply_t = [&](const State& x) {
        State y(n, 0.0);
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t i = 0; i < n; ++i) y[j] += cols[j][i] * x[i];
        return y;
    };

    State x(n);
    for (std::size_t i = 0; i < n; ++i)
        x[i] = std::cos(static_cast<double>(i) * 0.7) + 1e-3 * static_cast<double>(i % 7);
    double lambda = 0.0;
    const int cap = 100000;
    for (int it = 0; it < cap; ++it) {
        State y = apply_t(apply(x));
        double norm = 0.0;
        for (double c : y) norm += c * c;
        norm = std::sqrt(norm);
        if (norm == 0.0) return 0.0;  // zero operator
        double lambda_new = 0.0;
        for (std::size_t i = 0; i < n; ++i) lambda_new += x[i] * y[i];
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
        if (it > 0 && std::abs(lambda_new - lambda) <= 1e-8 * std::abs(lambda_new))
            return std::sqrt(std::abs(lambda_new));
        lambda = lambda_new;
    }
    throw std::runtime_error("operator_norm_estimate: power iteration did not converge");
}

}  // namespace dvdm
