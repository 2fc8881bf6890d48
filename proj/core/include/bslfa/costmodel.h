#pragma once

#include "bslfa/relaxation.h"

namespace bslfa::cost {

// Multiply-add counts per mesh node for the equal-order saddle system with
// 9-point stencil blocks. Velocity Laplacian contributes two diagonal
// blocks, the gradient and divergence two each, the stabilization one.
inline constexpr int kStencilPoints = 9;
inline constexpr int kSystemBlocks = 7;
inline constexpr int kSchurStencilPoints = 25;
inline constexpr int kResidualMadds = kSystemBlocks * kStencilPoints;

/// Per-node cost of one relaxation sweep, excluding the residual it consumes.
/// Covers the schemes whose per-sweep work is a fixed stencil count; exact
/// Schur solves have no such count and are rejected.
int relaxation_madds(const RelaxScheme& s);

/// Residual plus relaxation, per node per sweep.
int sweep_madds(const RelaxScheme& s);

/// Error reduction per unit work: a scheme with factor rho at work_ratio
/// times the cost of a reference scheme reduces error by rho^(1/work_ratio)
/// in the reference scheme's budget.
double effective_factor(double rho, double work_ratio);

}  // namespace bslfa::cost
