#include "bslfa/stencil.h"

#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

namespace bslfa {
namespace {

// 1D factor tables in half-mesh units; every 2D operator below is a tensor
// product of these, so the grid side never touches the Fourier symbols.
StencilTable q1_stiffness_1d(double h) {
  return {{-2, 0, -1.0 / h}, {0, 0, 2.0 / h}, {2, 0, -1.0 / h}};
}

StencilTable q1_mass_1d(double h) {
  return {{-2, 0, h / 6.0}, {0, 0, 2.0 * h / 3.0}, {2, 0, h / 6.0}};
}

StencilTable q1_deriv_1d() {
  return {{-2, 0, -0.5}, {2, 0, 0.5}};
}

StencilTable q1_lump_1d(double h) {
  return {{-2, 0, h / 4.0}, {0, 0, h / 2.0}, {2, 0, h / 4.0}};
}

// Biquadratic 1D factors indexed by (row type, column type) with type 0 a
// vertex and type 1 an element midpoint.
StencilTable q2_stiffness_1d(int rt, int ct, double h) {
  if (rt == 0 && ct == 0)
    return {{-2, 0, 1.0 / (3.0 * h)},
            {0, 0, 14.0 / (3.0 * h)},
            {2, 0, 1.0 / (3.0 * h)}};
  if (rt != ct)
    return {{-1, 0, -8.0 / (3.0 * h)}, {1, 0, -8.0 / (3.0 * h)}};
  return {{0, 0, 16.0 / (3.0 * h)}};
}

StencilTable q2_mass_1d(int rt, int ct, double h) {
  if (rt == 0 && ct == 0)
    return {{-2, 0, -h / 30.0}, {0, 0, 8.0 * h / 30.0}, {2, 0, -h / 30.0}};
  if (rt != ct) return {{-1, 0, 2.0 * h / 30.0}, {1, 0, 2.0 * h / 30.0}};
  return {{0, 0, 16.0 * h / 30.0}};
}

StencilTable q2_deriv_1d(int rt) {
  if (rt == 0) return {{-2, 0, -1.0 / 6.0}, {2, 0, 1.0 / 6.0}};
  return {{-1, 0, -2.0 / 3.0}, {1, 0, 2.0 / 3.0}};
}

// Mixed mass of a biquadratic test row against bilinear hat columns. The
// vertex row is a single weight: the quadratic vertex function integrates
// to zero against either neighboring hat.
StencilTable q2_hat_mass_1d(int rt, double h) {
  if (rt == 0) return {{0, 0, h / 3.0}};
  return {{-1, 0, h / 3.0}, {1, 0, h / 3.0}};
}

StencilTable tensor(const StencilTable& x, const StencilTable& y) {
  StencilTable out;
  out.reserve(x.size() * y.size());
  for (const auto& a : x)
    for (const auto& b : y) out.push_back({a.dx, b.dx, a.w * b.w});
  return out;
}

StencilTable q1_laplace_2d(double h) {
  return added(tensor(q1_stiffness_1d(h), q1_mass_1d(h)),
               tensor(q1_mass_1d(h), q1_stiffness_1d(h)));
}

StencilTable q2_stiffness_2d(int r, int c, double h) {
  const int rx = r & 1, ry = r >> 1, cx = c & 1, cy = c >> 1;
  return added(
      tensor(q2_mass_1d(rx, cx, h), q2_stiffness_1d(ry, cy, h)),
      tensor(q2_stiffness_1d(rx, cx, h), q2_mass_1d(ry, cy, h)));
}

StencilTable q1_node_transfer_1d() {
  return {{-2, 0, 0.5}, {0, 0, 1.0}, {2, 0, 0.5}};
}

// Coarse biquadratic basis evaluated on the fine sub-grids, per
// (fine type, coarse type); displacements are fine minus coarse.
StencilTable q2_transfer_1d(int tf, int tc) {
  if (tf == 0) return {{0, 0, 1.0}};
  if (tc == 0)
    return {{-3, 0, -0.125}, {-1, 0, 0.375}, {1, 0, 0.375}, {3, 0, -0.125}};
  return {{-1, 0, 0.75}, {1, 0, 0.75}};
}

}  // namespace

StencilTable scaled(StencilTable t, double s) {
  for (auto& e : t) e.w *= s;
  return t;
}

StencilTable added(StencilTable a, const StencilTable& b) {
  a.insert(a.end(), b.begin(), b.end());
  return compacted(a, 0.0);
}

StencilTable transposed(StencilTable t) {
  for (auto& e : t) {
    e.dx = -e.dx;
    e.dy = -e.dy;
  }
  return t;
}

StencilTable composed(const StencilTable& a, const StencilTable& b) {
  StencilTable out;
  out.reserve(a.size() * b.size());
  for (const auto& ea : a)
    for (const auto& eb : b)
      out.push_back({ea.dx + eb.dx, ea.dy + eb.dy, ea.w * eb.w});
  return compacted(out);
}

StencilTable compacted(const StencilTable& t, double tol) {
  std::map<std::pair<int, int>, double> acc;
  for (const auto& e : t) acc[{e.dx, e.dy}] += e.w;
  StencilTable out;
  for (const auto& [d, w] : acc)
    if (std::abs(w) > tol) out.push_back({d.first, d.second, w});
  return out;
}

Complex table_symbol(const StencilTable& t, const Frequency& theta) {
  Complex s = 0.0;
  for (const auto& e : t)
    s += e.w * std::exp(Complex(0.0, 0.5 * (theta.t1 * e.dx + theta.t2 * e.dy)));
  return s;
}

Complex BlockStencil::symbol(int r, int c, const Frequency& t) const {
  return table_symbol(at(r, c), t);
}

Eigen::MatrixXcd BlockStencil::symbol(const Frequency& t) const {
  Eigen::MatrixXcd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = symbol(r, c, t);
  return m;
}

double BlockStencil::center(int r) const {
  for (const auto& e : at(r, r))
    if (e.dx == 0 && e.dy == 0) return e.w;
  return 0.0;
}

int field_count(Disc disc) { return disc == Disc::Q2Q1 ? 9 : 3; }

std::array<int, 2> field_offset(Disc disc, int field) {
  if (disc != Disc::Q2Q1 || field == 8) return {0, 0};
  const int t = field & 3;
  return {t & 1, t >> 1};
}

BlockStencil gradient_stencil(Disc disc, double h) {
  BlockStencil g;
  if (disc == Disc::Q2Q1) {
    g.rows = 8;
    g.cols = 2;  // column 0 the x-derivative, column 1 the y-derivative
    g.blocks.assign(16, {});
    for (int t = 0; t < 4; ++t) {
      const int tx = t & 1, ty = t >> 1;
      g.at(t, 0) = tensor(q2_deriv_1d(tx), q2_hat_mass_1d(ty, h));
      g.at(4 + t, 1) = tensor(q2_hat_mass_1d(tx, h), q2_deriv_1d(ty));
    }
    for (int f = 0; f < 8; ++f) g.row_offsets.push_back(field_offset(disc, f));
    g.col_offsets = {{0, 0}, {0, 0}};
    return g;
  }
  g.rows = 2;
  g.cols = 2;
  g.blocks.assign(4, {});
  g.at(0, 0) = tensor(q1_deriv_1d(), q1_mass_1d(h));
  g.at(1, 1) = tensor(q1_mass_1d(h), q1_deriv_1d());
  g.row_offsets = {{0, 0}, {0, 0}};
  g.col_offsets = {{0, 0}, {0, 0}};
  return g;
}

StencilTable pressure_laplace_stencil() { return q1_laplace_2d(1.0); }

StencilTable pressure_mass_stencil(double h) {
  return tensor(q1_mass_1d(h), q1_mass_1d(h));
}

StencilTable stabilization_stencil(Disc disc, double h) {
  switch (disc) {
    case Disc::PoSD:
      return scaled(q1_laplace_2d(h), h * h / 24.0);
    case Disc::PrSD:
      return added(tensor(q1_mass_1d(h), q1_mass_1d(h)),
                   scaled(tensor(q1_lump_1d(h), q1_lump_1d(h)), -1.0));
    case Disc::Q2Q1:
      return {};
  }
  throw std::invalid_argument("unknown discretization");
}

BlockStencil system_stencil(Disc disc, double h) {
  const int n = field_count(disc);
  BlockStencil k;
  k.rows = n;
  k.cols = n;
  k.blocks.assign(n * n, {});
  for (int f = 0; f < n; ++f) k.row_offsets.push_back(field_offset(disc, f));
  k.col_offsets = k.row_offsets;

  const BlockStencil g = gradient_stencil(disc, h);
  if (disc == Disc::Q2Q1) {
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c) {
        k.at(r, c) = q2_stiffness_2d(r, c, h);
        k.at(4 + r, 4 + c) = k.at(r, c);
      }
    for (int t = 0; t < 4; ++t) {
      k.at(t, 8) = g.at(t, 0);
      k.at(4 + t, 8) = g.at(4 + t, 1);
      k.at(8, t) = transposed(g.at(t, 0));
      k.at(8, 4 + t) = transposed(g.at(4 + t, 1));
    }
    return k;
  }
  k.at(0, 0) = q1_laplace_2d(h);
  k.at(1, 1) = k.at(0, 0);
  k.at(0, 2) = g.at(0, 0);
  k.at(1, 2) = g.at(1, 1);
  k.at(2, 0) = transposed(g.at(0, 0));
  k.at(2, 1) = transposed(g.at(1, 1));
  k.at(2, 2) = scaled(stabilization_stencil(disc, h), -1.0);
  return k;
}

StencilTable schur_stencil(Disc disc, double h, double alpha) {
  const BlockStencil k = system_stencil(disc, h);
  const int n = field_count(disc);
  StencilTable s = stabilization_stencil(disc, h);
  for (int f = 0; f < n - 1; ++f) {
    const StencilTable& grad = k.at(f, n - 1);
    if (grad.empty()) continue;
    s = added(s, scaled(composed(transposed(grad), grad),
                        1.0 / (alpha * k.center(f))));
  }
  return s;
}

StencilTable dwj_pressure_stencil(Disc disc, double h) {
  const BlockStencil g = gradient_stencil(disc, h);
  if (disc == Disc::Q2Q1)
    throw std::invalid_argument(
        "distributed pressure sweep needs a scalar velocity diagonal");
  StencilTable out = added(composed(transposed(g.at(0, 0)), g.at(0, 0)),
                           composed(transposed(g.at(1, 1)), g.at(1, 1)));
  return added(out, composed(stabilization_stencil(disc, h),
                             pressure_laplace_stencil()));
}

TransferTable transfer_table(Disc disc) {
  TransferTable t;
  if (disc == Disc::Q2Q1) {
    t.fine_fields = 9;
    t.coarse_fields = 9;
    t.blocks.assign(81, {});
    for (int f = 0; f < 9; ++f) {
      t.fine_offsets.push_back(field_offset(disc, f));
      auto c = field_offset(disc, f);
      t.coarse_offsets.push_back({2 * c[0], 2 * c[1]});
    }
    for (int comp = 0; comp < 2; ++comp)
      for (int f = 0; f < 4; ++f)
        for (int c = 0; c < 4; ++c)
          t.blocks[(4 * comp + f) * 9 + (4 * comp + c)] =
              tensor(q2_transfer_1d(f & 1, c & 1),
                     q2_transfer_1d(f >> 1, c >> 1));
    t.blocks[8 * 9 + 8] =
        tensor(q1_node_transfer_1d(), q1_node_transfer_1d());
    return t;
  }
  t.fine_fields = 3;
  t.coarse_fields = 3;
  t.blocks.assign(9, {});
  t.fine_offsets.assign(3, {0, 0});
  t.coarse_offsets.assign(3, {0, 0});
  const StencilTable node =
      tensor(q1_node_transfer_1d(), q1_node_transfer_1d());
  for (int f = 0; f < 3; ++f) t.blocks[f * 3 + f] = node;
  return t;
}

}  // namespace bslfa
