#pragma once

#include <array>
#include <vector>

#include "bslfa/discretization.h"
#include "bslfa/frequency.h"

namespace bslfa {

/// One stencil weight at a displacement in half-mesh units.
struct StencilEntry {
  int dx = 0;
  int dy = 0;
  double w = 0.0;
};
using StencilTable = std::vector<StencilEntry>;

StencilTable scaled(StencilTable t, double s);
StencilTable added(StencilTable a, const StencilTable& b);
/// Adjoint under the periodic inner product: w(-d).
StencilTable transposed(StencilTable t);
/// Convolution, the stencil of a applied after b.
StencilTable composed(const StencilTable& a, const StencilTable& b);
/// Merges duplicate displacements and drops negligible weights.
StencilTable compacted(const StencilTable& t, double tol = 1e-14);

Complex table_symbol(const StencilTable& t, const Frequency& theta);

/// Block operator between typed scalar fields on one periodic mesh. Field
/// positions are mesh points shifted by a per-field offset in half-mesh
/// units, so displacements between fields of unlike parity stay integral.
struct BlockStencil {
  int rows = 0;
  int cols = 0;
  std::vector<std::array<int, 2>> row_offsets;
  std::vector<std::array<int, 2>> col_offsets;
  std::vector<StencilTable> blocks;  // row-major

  StencilTable& at(int r, int c) { return blocks[r * cols + c]; }
  const StencilTable& at(int r, int c) const { return blocks[r * cols + c]; }

  /// Fourier symbol of one block: sum of w exp(i theta . d / 2).
  Complex symbol(int r, int c, const Frequency& t) const;
  Eigen::MatrixXcd symbol(const Frequency& t) const;
  /// Zero-displacement weight of a diagonal block.
  double center(int r) const;
};

/// Field layout per discretization: velocity components (split into typed
/// sub-grids for the biquadratic case) followed by pressure.
int field_count(Disc disc);
std::array<int, 2> field_offset(Disc disc, int field);

/// The saddle system [[A, 0, Gx], [0, A, Gy], [Gx^T, Gy^T, -C]].
BlockStencil system_stencil(Disc disc, double h);

/// Gradient blocks Gx, Gy as velocity-rows by pressure-column operators.
BlockStencil gradient_stencil(Disc disc, double h);

/// Bilinear pressure Laplacian (the distributive pressure operator).
StencilTable pressure_laplace_stencil();

/// Bilinear pressure mass matrix.
StencilTable pressure_mass_stencil(double h);

/// Stabilization block C; zero for the stable pairing.
StencilTable stabilization_stencil(Disc disc, double h);

/// Approximate Schur complement C + B (alpha D)^-1 B^T on the pressure grid,
/// with D the diagonal of the velocity stiffness blocks.
StencilTable schur_stencil(Disc disc, double h, double alpha);

/// Distributed pressure operator B B^T + C A_p with symbol h^2 y2.
StencilTable dwj_pressure_stencil(Disc disc, double h);

/// Grid transfer: per (fine field, coarse field) weights at displacements
/// fine minus coarse in fine half-mesh units. Prolongation scatters these;
/// restriction gathers the same weights, so the pair is an exact adjoint.
struct TransferTable {
  int fine_fields = 0;
  int coarse_fields = 0;
  std::vector<std::array<int, 2>> fine_offsets;    // fine half-units
  std::vector<std::array<int, 2>> coarse_offsets;  // fine half-units
  std::vector<StencilTable> blocks;                // row-major fine x coarse

  const StencilTable& at(int f, int c) const {
    return blocks[f * coarse_fields + c];
  }
};

TransferTable transfer_table(Disc disc);

}  // namespace bslfa
