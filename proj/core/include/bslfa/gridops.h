#pragma once

#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "bslfa/stencil.h"

namespace bslfa {

/// Typed scalar fields on an n-by-n periodic cell mesh, row-major with x
/// fastest. Field f holds values at points 2 (ix, iy) + offset(f) in
/// half-mesh units.
struct GridFunction {
  int n = 0;
  std::vector<Eigen::VectorXd> fields;

  double& at(int f, int ix, int iy) { return fields[f][iy * n + ix]; }
  double at(int f, int ix, int iy) const { return fields[f][iy * n + ix]; }
  void setZero();
  int total_size() const;
};

GridFunction make_grid_function(int fields, int n);
double dot(const GridFunction& a, const GridFunction& b);
double norm(const GridFunction& a);
/// y += s * x
void axpy(double s, const GridFunction& x, GridFunction& y);

/// out = K in. Requires n to be a power of two.
void apply(const BlockStencil& k, const GridFunction& in, GridFunction& out);
/// out -= K in
void apply_sub(const BlockStencil& k, const GridFunction& in,
               GridFunction& out);
/// out += scale * T in for one typed field pair; offsets in half-units.
void apply_table(const StencilTable& t, const std::array<int, 2>& row_off,
                 const std::array<int, 2>& col_off, int n,
                 const Eigen::VectorXd& in, Eigen::VectorXd& out,
                 double scale = 1.0);

/// fine = P coarse (fine.n == 2 * coarse.n).
void prolong(const TransferTable& t, const GridFunction& coarse,
             GridFunction& fine);
/// coarse = P^T fine, the adjoint gather over the same weights.
void restrict_to_coarse(const TransferTable& t, const GridFunction& fine,
                        GridFunction& coarse);

/// Coarse operator P^T K P extracted by probing with per-field deltas on a
/// coarse mesh of at least 8 cells; on smaller meshes periodic images
/// overlap and the wrapped weights fold together, which is the correct
/// circulant but no longer a mesh-size-independent table.
BlockStencil galerkin_stencil(const TransferTable& t, const BlockStencil& k,
                              int coarse_n);

/// Direct periodic solver for a scalar stencil via the FFT. A singular
/// stencil (zero row sum) is solved on the mean-zero complement.
class ScalarSolver {
 public:
  ScalarSolver(const StencilTable& s, int n);
  ~ScalarSolver();
  ScalarSolver(const ScalarSolver&) = delete;
  ScalarSolver& operator=(const ScalarSolver&) = delete;

  bool singular() const { return singular_; }
  void solve(const Eigen::VectorXd& rhs, Eigen::VectorXd& x) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  bool singular_ = false;
};

/// Direct periodic solver for a block stencil: the FFT decouples the system
/// into one dense block per frequency, solved by pseudo-inverse so singular
/// modes (per-field constants and any other rank loss) return their
/// minimum-norm correction.
class BlockSolver {
 public:
  BlockSolver(const BlockStencil& k, int n);
  ~BlockSolver();
  BlockSolver(const BlockSolver&) = delete;
  BlockSolver& operator=(const BlockSolver&) = delete;

  void solve(const GridFunction& rhs, GridFunction& x) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace bslfa
