#include "bslfa/gridops.h"

#include <fftw3.h>

#include <cassert>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace bslfa {
namespace {

inline int wrap_delta(int d, int n) {
  d %= n;
  if (d < -n / 2) d += n;
  if (d >= n / 2 && n > 1) d -= n;
  return d;
}

void apply_weighted(const BlockStencil& k, const GridFunction& in,
                    GridFunction& out, double sign) {
  for (int r = 0; r < k.rows; ++r)
    for (int c = 0; c < k.cols; ++c)
      apply_table(k.at(r, c), k.row_offsets[r], k.col_offsets[c], in.n,
                  in.fields[c], out.fields[r], sign);
}

}  // namespace

void apply_table(const StencilTable& t, const std::array<int, 2>& row_off,
                 const std::array<int, 2>& col_off, int n,
                 const Eigen::VectorXd& in, Eigen::VectorXd& out,
                 double scale) {
  assert((n & (n - 1)) == 0);
  const int mask = n - 1;
  const double* s = in.data();
  double* o = out.data();
  for (const auto& e : t) {
    const int hx = row_off[0] + e.dx - col_off[0];
    const int hy = row_off[1] + e.dy - col_off[1];
    assert((hx & 1) == 0 && (hy & 1) == 0);
    const int di = hx / 2, dj = hy / 2;
    const double w = scale * e.w;
    for (int iy = 0; iy < n; ++iy) {
      const double* src = s + ((iy + dj) & mask) * n;
      double* dst = o + iy * n;
      for (int ix = 0; ix < n; ++ix) dst[ix] += w * src[(ix + di) & mask];
    }
  }
}

void GridFunction::setZero() {
  for (auto& f : fields) f.setZero();
}

int GridFunction::total_size() const {
  int s = 0;
  for (const auto& f : fields) s += static_cast<int>(f.size());
  return s;
}

GridFunction make_grid_function(int fields, int n) {
  GridFunction g;
  g.n = n;
  g.fields.assign(fields, Eigen::VectorXd::Zero(n * n));
  return g;
}

double dot(const GridFunction& a, const GridFunction& b) {
  double s = 0.0;
  for (size_t f = 0; f < a.fields.size(); ++f)
    s += a.fields[f].dot(b.fields[f]);
  return s;
}

double norm(const GridFunction& a) { return std::sqrt(dot(a, a)); }

void axpy(double s, const GridFunction& x, GridFunction& y) {
  for (size_t f = 0; f < x.fields.size(); ++f) y.fields[f] += s * x.fields[f];
}

void apply(const BlockStencil& k, const GridFunction& in, GridFunction& out) {
  out.setZero();
  apply_weighted(k, in, out, 1.0);
}

void apply_sub(const BlockStencil& k, const GridFunction& in,
               GridFunction& out) {
  apply_weighted(k, in, out, -1.0);
}

void prolong(const TransferTable& t, const GridFunction& coarse,
             GridFunction& fine) {
  const int n = fine.n, nc = coarse.n;
  assert(n == 2 * nc && (nc & (nc - 1)) == 0);
  const int cmask = nc - 1;
  fine.setZero();
  for (int f = 0; f < t.fine_fields; ++f) {
    double* o = fine.fields[f].data();
    for (int c = 0; c < t.coarse_fields; ++c) {
      const double* s = coarse.fields[c].data();
      for (const auto& e : t.at(f, c)) {
        // Fine point x couples to the coarse point at x - d when that lands
        // on the coarse sub-grid; the offsets fix which fine parity fires.
        const int bx = t.fine_offsets[f][0] - e.dx - t.coarse_offsets[c][0];
        const int by = t.fine_offsets[f][1] - e.dy - t.coarse_offsets[c][1];
        for (int iy = 0; iy < n; ++iy) {
          const int vy = 2 * iy + by;
          if (vy & 3) continue;
          const double* src = s + ((vy >> 2) & cmask) * nc;
          double* dst = o + iy * n;
          for (int ix = 0; ix < n; ++ix) {
            const int vx = 2 * ix + bx;
            if (vx & 3) continue;
            dst[ix] += e.w * src[(vx >> 2) & cmask];
          }
        }
      }
    }
  }
}

void restrict_to_coarse(const TransferTable& t, const GridFunction& fine,
                        GridFunction& coarse) {
  const int n = fine.n, nc = coarse.n;
  assert(n == 2 * nc && (n & (n - 1)) == 0);
  const int mask = n - 1;
  coarse.setZero();
  for (int c = 0; c < t.coarse_fields; ++c) {
    double* o = coarse.fields[c].data();
    for (int f = 0; f < t.fine_fields; ++f) {
      const double* s = fine.fields[f].data();
      for (const auto& e : t.at(f, c)) {
        const int bx = 2 * t.coarse_offsets[c][0] + 2 * e.dx;
        const int by = 2 * t.coarse_offsets[c][1] + 2 * e.dy;
        // Fine point 4M + coarse offset + d, in quarter-mesh units to keep
        // the division exact; offsets guarantee even coordinates.
        assert(((bx - 2 * t.fine_offsets[f][0]) & 3) == 0 &&
               ((by - 2 * t.fine_offsets[f][1]) & 3) == 0);
        const int ox = (bx - 2 * t.fine_offsets[f][0]) >> 2;
        const int oy = (by - 2 * t.fine_offsets[f][1]) >> 2;
        for (int my = 0; my < nc; ++my) {
          const double* src = s + ((2 * my + oy) & mask) * n;
          double* dst = o + my * nc;
          for (int mx = 0; mx < nc; ++mx)
            dst[mx] += e.w * src[(2 * mx + ox) & mask];
        }
      }
    }
  }
}

BlockStencil galerkin_stencil(const TransferTable& t, const BlockStencil& k,
                              int coarse_n) {
  const int nc = coarse_n, n = 2 * nc;
  BlockStencil out;
  out.rows = t.coarse_fields;
  out.cols = t.coarse_fields;
  out.blocks.assign(out.rows * out.cols, {});
  for (int f = 0; f < t.coarse_fields; ++f) {
    auto off = t.coarse_offsets[f];
    out.row_offsets.push_back({off[0] / 2, off[1] / 2});
  }
  out.col_offsets = out.row_offsets;

  GridFunction cvec = make_grid_function(t.coarse_fields, nc);
  GridFunction fvec = make_grid_function(t.fine_fields, n);
  GridFunction kf = make_grid_function(k.rows, n);
  GridFunction probe = make_grid_function(t.coarse_fields, nc);
  const int m0 = nc / 2;
  for (int c = 0; c < t.coarse_fields; ++c) {
    cvec.setZero();
    cvec.at(c, m0, m0) = 1.0;
    prolong(t, cvec, fvec);
    apply(k, fvec, kf);
    restrict_to_coarse(t, kf, probe);
    for (int r = 0; r < t.coarse_fields; ++r)
      for (int my = 0; my < nc; ++my)
        for (int mx = 0; mx < nc; ++mx) {
          const double w = probe.at(r, mx, my);
          if (std::abs(w) <= 1e-14) continue;
          // The entry names the column relative to the row: the probe sits
          // at m0 and responds at m, so the displacement points back.
          const int dx = 2 * wrap_delta(m0 - mx, nc) +
                         out.col_offsets[c][0] - out.row_offsets[r][0];
          const int dy = 2 * wrap_delta(m0 - my, nc) +
                         out.col_offsets[c][1] - out.row_offsets[r][1];
          out.at(r, c).push_back({dx, dy, w});
        }
  }
  return out;
}

struct ScalarSolver::Impl {
  int n = 0;
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  std::vector<Complex> symbol;
  std::vector<bool> projected;
};

ScalarSolver::ScalarSolver(const StencilTable& s, int n)
    : impl_(new Impl) {
  impl_->n = n;
  impl_->buf = fftw_alloc_complex(static_cast<size_t>(n) * n);
  impl_->fwd = fftw_plan_dft_2d(n, n, impl_->buf, impl_->buf, FFTW_FORWARD,
                                FFTW_ESTIMATE);
  impl_->bwd = fftw_plan_dft_2d(n, n, impl_->buf, impl_->buf, FFTW_BACKWARD,
                                FFTW_ESTIMATE);
  impl_->symbol.assign(static_cast<size_t>(n) * n, Complex(0.0));
  impl_->projected.assign(static_cast<size_t>(n) * n, false);
  double peak = 0.0;
  for (int ky = 0; ky < n; ++ky)
    for (int kx = 0; kx < n; ++kx) {
      Complex sym = 0.0;
      for (const auto& e : s) {
        assert((e.dx & 1) == 0 && (e.dy & 1) == 0);
        const double ph =
            2.0 * kPi * (kx * (e.dx / 2) + ky * (e.dy / 2)) / n;
        sym += e.w * Complex(std::cos(ph), std::sin(ph));
      }
      impl_->symbol[ky * n + kx] = sym;
      peak = std::max(peak, std::abs(sym));
    }
  for (size_t i = 0; i < impl_->symbol.size(); ++i)
    if (std::abs(impl_->symbol[i]) <= 1e-13 * peak) {
      impl_->projected[i] = true;
      singular_ = true;
    }
}

ScalarSolver::~ScalarSolver() {
  fftw_destroy_plan(impl_->fwd);
  fftw_destroy_plan(impl_->bwd);
  fftw_free(impl_->buf);
}

void ScalarSolver::solve(const Eigen::VectorXd& rhs, Eigen::VectorXd& x) const {
  Impl* im = impl_.get();
  const int n = im->n;
  const size_t total = static_cast<size_t>(n) * n;
  if (rhs.size() != static_cast<Eigen::Index>(total))
    throw std::invalid_argument("solver and right-hand side sizes differ");
  for (size_t i = 0; i < total; ++i) {
    im->buf[i][0] = rhs[static_cast<Eigen::Index>(i)];
    im->buf[i][1] = 0.0;
  }
  fftw_execute(im->fwd);
  for (size_t i = 0; i < total; ++i) {
    if (im->projected[i]) {
      im->buf[i][0] = 0.0;
      im->buf[i][1] = 0.0;
      continue;
    }
    const Complex v =
        Complex(im->buf[i][0], im->buf[i][1]) / im->symbol[i];
    im->buf[i][0] = v.real();
    im->buf[i][1] = v.imag();
  }
  fftw_execute(im->bwd);
  x.resize(static_cast<Eigen::Index>(total));
  const double scale = 1.0 / static_cast<double>(total);
  for (size_t i = 0; i < total; ++i)
    x[static_cast<Eigen::Index>(i)] = scale * im->buf[i][0];
}

struct BlockSolver::Impl {
  int n = 0;
  int nf = 0;
  fftw_complex* buf = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  std::vector<Eigen::MatrixXcd> inverse;  // pseudo-inverse per frequency
  mutable std::vector<Eigen::VectorXcd> spectra;
};

BlockSolver::BlockSolver(const BlockStencil& k, int n) : impl_(new Impl) {
  Impl* im = impl_.get();
  im->n = n;
  im->nf = k.rows;
  const size_t total = static_cast<size_t>(n) * n;
  im->buf = fftw_alloc_complex(total);
  im->fwd =
      fftw_plan_dft_2d(n, n, im->buf, im->buf, FFTW_FORWARD, FFTW_ESTIMATE);
  im->bwd =
      fftw_plan_dft_2d(n, n, im->buf, im->buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  im->spectra.assign(total, Eigen::VectorXcd(im->nf));

  // Index-space symbol: entry d of block (r, c) shifts the source index by
  // (offset_r + d - offset_c) / 2, matching apply().
  std::vector<Eigen::MatrixXcd> sym(total,
                                    Eigen::MatrixXcd::Zero(im->nf, im->nf));
  double peak = 0.0;
  for (int ky = 0; ky < n; ++ky)
    for (int kx = 0; kx < n; ++kx) {
      Eigen::MatrixXcd& m = sym[static_cast<size_t>(ky) * n + kx];
      for (int r = 0; r < k.rows; ++r)
        for (int c = 0; c < k.cols; ++c)
          for (const auto& e : k.at(r, c)) {
            const int dix = (k.row_offsets[r][0] + e.dx - k.col_offsets[c][0]);
            const int diy = (k.row_offsets[r][1] + e.dy - k.col_offsets[c][1]);
            assert((dix & 1) == 0 && (diy & 1) == 0);
            const double ph =
                2.0 * kPi * (kx * (dix / 2) + ky * (diy / 2)) / n;
            m(r, c) += e.w * Complex(std::cos(ph), std::sin(ph));
          }
      peak = std::max(peak, m.cwiseAbs().maxCoeff());
    }
  im->inverse.reserve(total);
  for (const auto& m : sym) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(
        m, Eigen::ComputeFullU | Eigen::ComputeFullV);
    Eigen::VectorXd inv_sv = svd.singularValues();
    for (Eigen::Index i = 0; i < inv_sv.size(); ++i)
      inv_sv[i] = inv_sv[i] > 1e-12 * peak ? 1.0 / inv_sv[i] : 0.0;
    im->inverse.push_back(svd.matrixV() * inv_sv.asDiagonal() *
                          svd.matrixU().adjoint());
  }
}

BlockSolver::~BlockSolver() {
  fftw_destroy_plan(impl_->fwd);
  fftw_destroy_plan(impl_->bwd);
  fftw_free(impl_->buf);
}

void BlockSolver::solve(const GridFunction& rhs, GridFunction& x) const {
  Impl* im = impl_.get();
  const int n = im->n;
  const size_t total = static_cast<size_t>(n) * n;
  if (rhs.n != n || static_cast<int>(rhs.fields.size()) != im->nf)
    throw std::invalid_argument("solver and right-hand side shapes differ");
  for (int f = 0; f < im->nf; ++f) {
    const Eigen::VectorXd& src = rhs.fields[f];
    for (size_t i = 0; i < total; ++i) {
      im->buf[i][0] = src[static_cast<Eigen::Index>(i)];
      im->buf[i][1] = 0.0;
    }
    fftw_execute(im->fwd);
    for (size_t i = 0; i < total; ++i)
      im->spectra[i][f] = Complex(im->buf[i][0], im->buf[i][1]);
  }
  for (size_t i = 0; i < total; ++i)
    im->spectra[i] = im->inverse[i] * im->spectra[i];
  const double scale = 1.0 / static_cast<double>(total);
  for (int f = 0; f < im->nf; ++f) {
    for (size_t i = 0; i < total; ++i) {
      im->buf[i][0] = im->spectra[i][f].real();
      im->buf[i][1] = im->spectra[i][f].imag();
    }
    fftw_execute(im->bwd);
    Eigen::VectorXd& dst = x.fields[f];
    for (size_t i = 0; i < total; ++i)
      dst[static_cast<Eigen::Index>(i)] = scale * im->buf[i][0];
  }
}

}  // namespace bslfa
