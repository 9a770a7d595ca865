#pragma once

#include <functional>

#include "dvdm/grid.hpp"

namespace dvdm {

/// Periodic difference and average stencils.
///   FwdDiff     (v[k+1] - v[k]) / dx
///   BwdDiff     (v[k] - v[k-1]) / dx
///   CDiff1      (v[k+1] - v[k-1]) / (2 dx)
///   CDiff2      (v[k+1] - 2 v[k] + v[k-1]) / dx^2
///   FwdAvgSpace (v[k+1] + v[k]) / 2
///   CAvg1       (v[k+1] + v[k-1]) / 2
enum class StencilKind { FwdDiff, BwdDiff, CDiff1, CDiff2, FwdAvgSpace, CAvg1 };

State stencil_apply(StencilKind kind, const State& v, double dx);

enum class TemporalOp { FwdDiffT, FwdAvgT };

/// FwdDiffT: (u_next - u_curr) / dt. FwdAvgT: (u_next + u_curr) / 2.
State temporal_pair(TemporalOp op, const State& u_next, const State& u_curr, double dt);

/// Generalized inverse of the first central difference, defined
/// spectrally: nonzero Fourier symbols i sin(2 pi j / K) / dx are
/// inverted, the mean mode and (even K) the Nyquist mode map to zero.
/// The result has zero mean and satisfies CDiff1 o inv o CDiff1 = CDiff1.
State fd_inverse(const State& v, double dx);

using LinearOp = std::function<State(const State&)>;

/// Spectral norm of the K x K matrix of `op`, by power iteration on
/// A^T A to relative tolerance 1e-8. The matrix is materialized here;
/// this is a diagnostic, not a solver-path routine. Throws on
/// non-convergence.
double operator_norm_estimate(const LinearOp& op, int K);

}  // namespace dvdm
