#include "bslfa/mgsolver.h"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>

namespace bslfa {
namespace {

using Eigen::VectorXd;
using COD = Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd>;
constexpr std::array<int, 2> kZeroOff = {0, 0};

bool pow2(int n) { return n >= 1 && (n & (n - 1)) == 0; }

double table_center(const StencilTable& t) {
  for (const auto& e : t)
    if (e.dx == 0 && e.dy == 0) return e.w;
  return 0.0;
}

void copy_into(const GridFunction& src, GridFunction& dst) {
  dst.n = src.n;
  dst.fields = src.fields;
}

Eigen::MatrixXd assemble_dense(const BlockStencil& k, int n) {
  const int nf = k.rows;
  const int cells = n * n;
  Eigen::MatrixXd m(nf * cells, nf * cells);
  GridFunction e = make_grid_function(nf, n);
  GridFunction ke = make_grid_function(nf, n);
  for (int f = 0; f < nf; ++f)
    for (int i = 0; i < cells; ++i) {
      e.setZero();
      e.fields[f][i] = 1.0;
      apply(k, e, ke);
      for (int rf = 0; rf < nf; ++rf)
        m.block(rf * cells, f * cells + i, cells, 1) = ke.fields[rf];
    }
  return m;
}

TransferTable pressure_only_transfer(const TransferTable& t) {
  TransferTable s;
  s.fine_fields = 1;
  s.coarse_fields = 1;
  const int f = t.fine_fields - 1, c = t.coarse_fields - 1;
  s.fine_offsets = {t.fine_offsets[f]};
  s.coarse_offsets = {t.coarse_offsets[c]};
  s.blocks = {t.at(f, c)};
  return s;
}

}  // namespace

struct MultigridSolver::ScalarLevel {
  int n = 0;
  StencilTable s;
  double diag = 0.0;
  std::unique_ptr<COD> direct;
  VectorXd r, b, x;
};

struct MultigridSolver::Level {
  int n = 0;
  double h = 0.0;
  BlockStencil K;
  std::vector<double> diag;  // per-field zero-displacement weights
  StencilTable Ap;           // distributive pressure operator
  StencilTable Gp;           // div grad plus stabilized pressure coupling
  StencilTable S;            // approximate Schur complement
  double s_diag = 0.0;
  double sigma_h2 = 0.0;
  std::unique_ptr<ScalarSolver> schur_solver;
  std::unique_ptr<ScalarSolver> mass_solver;
  std::vector<ScalarLevel> inner;
  std::unique_ptr<BlockSolver> direct;
  GridFunction r, e, upd, b, x;
  VectorXd g, dp, t1;
};

MultigridSolver::MultigridSolver(const SolveSpec& spec)
    : spec_(spec), transfer_(transfer_table(spec.disc)) {
  if (!pow2(spec_.n) || !pow2(spec_.coarsest_n) || spec_.coarsest_n < 2 ||
      spec_.n < spec_.coarsest_n)
    throw std::invalid_argument("mesh sizes must be powers of two");
  if (spec_.h <= 0.0) spec_.h = 1.0 / spec_.n;
  if (spec_.cycle_gamma < 1) throw std::invalid_argument("cycle_gamma < 1");
  const Disc disc = spec_.disc;
  const SchemeKind kind = spec_.scheme.kind;
  const SchemeParams& p = spec_.scheme.p;
  if (kind == SchemeKind::DWJ2 && disc == Disc::Q2Q1)
    throw std::invalid_argument(
        "no distributed pressure operator for the mixed-order pairing");

  ptrans_ = pressure_only_transfer(transfer_);
  const int nf = field_count(disc);
  for (int n = spec_.n; ; n /= 2) {
    auto lev = std::make_unique<Level>();
    lev->n = n;
    lev->h = spec_.h * (spec_.n / n);
    if (levels_.empty() || spec_.coarsening == Coarsening::Rediscretize)
      lev->K = system_stencil(disc, lev->h);
    else
      lev->K = galerkin_stencil(transfer_, levels_.back()->K, n);
    levels_.push_back(std::move(lev));
    if (n == spec_.coarsest_n) break;
  }

  for (size_t l = 0; l < levels_.size(); ++l) {
    Level& lev = *levels_[l];
    const int n = lev.n;
    const int cells = n * n;
    lev.r = make_grid_function(nf, n);
    lev.e = make_grid_function(nf, n);
    lev.b = make_grid_function(nf, n);
    lev.x = make_grid_function(nf, n);
    if (l + 1 == levels_.size()) {
      lev.direct = std::make_unique<BlockSolver>(lev.K, n);
      continue;
    }
    lev.upd = make_grid_function(nf, n);
    lev.g.resize(cells);
    lev.dp.resize(cells);
    lev.t1.resize(cells);
    for (int f = 0; f < nf; ++f) lev.diag.push_back(lev.K.center(f));

    const int np = nf - 1;
    StencilTable stab = scaled(lev.K.at(np, np), -1.0);
    lev.S = stab;
    for (int f = 0; f < np; ++f)
      lev.S = added(lev.S, scaled(composed(lev.K.at(np, f), lev.K.at(f, np)),
                                  1.0 / (p.alpha * lev.diag[f])));
    lev.s_diag = table_center(lev.S);

    switch (kind) {
      case SchemeKind::DWJ1:
      case SchemeKind::DWJ2:
        lev.Ap = pressure_laplace_stencil();
        if (kind == SchemeKind::DWJ2) {
          lev.Gp = composed(stab, lev.Ap);
          for (int f = 0; f < np; ++f)
            lev.Gp = added(lev.Gp,
                           composed(lev.K.at(np, f), lev.K.at(f, np)));
        }
        break;
      case SchemeKind::BSRExact:
      case SchemeKind::UzawaSchur:
        lev.schur_solver = std::make_unique<ScalarSolver>(lev.S, n);
        break;
      case SchemeKind::IBSR:
        if (p.inner_cycles >= 1) {
          lev.inner.emplace_back();
          lev.inner.back().n = n;
          lev.inner.back().s = lev.S;
          while (lev.inner.back().n > 2) {
            BlockStencil wrap;
            wrap.rows = wrap.cols = 1;
            wrap.row_offsets = wrap.col_offsets = {kZeroOff};
            wrap.blocks = {lev.inner.back().s};
            const int nc = lev.inner.back().n / 2;
            ScalarLevel next;
            next.n = nc;
            next.s = galerkin_stencil(ptrans_, wrap, nc).at(0, 0);
            lev.inner.push_back(std::move(next));
          }
          for (auto& sl : lev.inner) {
            sl.diag = table_center(sl.s);
            sl.r.resize(sl.n * sl.n);
            sl.b.resize(sl.n * sl.n);
            sl.x.resize(sl.n * sl.n);
          }
          BlockStencil wrap;
          wrap.rows = wrap.cols = 1;
          wrap.row_offsets = wrap.col_offsets = {kZeroOff};
          wrap.blocks = {lev.inner.back().s};
          lev.inner.back().direct =
              std::make_unique<COD>(assemble_dense(wrap, 2));
        }
        break;
      case SchemeKind::UzawaMass:
        lev.mass_solver = std::make_unique<ScalarSolver>(
            added(stab, scaled(pressure_mass_stencil(lev.h), p.delta)), n);
        break;
      case SchemeKind::UzawaDiag:
        lev.sigma_h2 = p.sigma < 0.0 ? lev.s_diag : p.sigma * lev.h * lev.h;
        break;
    }
  }
}

MultigridSolver::~MultigridSolver() = default;

int MultigridSolver::levels() const {
  return static_cast<int>(levels_.size());
}

const BlockStencil& MultigridSolver::level_stencil(int l) const {
  return levels_.at(static_cast<size_t>(l))->K;
}

GridFunction MultigridSolver::make_vector() const {
  return make_grid_function(field_count(spec_.disc), spec_.n);
}

void MultigridSolver::defect(const GridFunction& x, const GridFunction& b,
                             GridFunction& d) const {
  copy_into(b, d);
  apply_sub(levels_.front()->K, x, d);
}

void MultigridSolver::cycle(GridFunction& x, const GridFunction& b) {
  run_cycle(0, x, b);
}

void MultigridSolver::relax_finest(GridFunction& x, const GridFunction& b,
                                   int sweeps) {
  if (levels_.size() < 2)
    throw std::logic_error("finest level is the direct-solve level");
  relax(*levels_.front(), x, b, sweeps);
}

void MultigridSolver::run_cycle(size_t l, GridFunction& x,
                                const GridFunction& b) {
  Level& lev = *levels_[l];
  copy_into(b, lev.r);
  if (l + 1 == levels_.size()) {
    apply_sub(lev.K, x, lev.r);
    lev.direct->solve(lev.r, lev.e);
    axpy(1.0, lev.e, x);
    return;
  }
  relax(lev, x, b, spec_.nu1);
  copy_into(b, lev.r);
  apply_sub(lev.K, x, lev.r);
  Level& coarse = *levels_[l + 1];
  restrict_to_coarse(transfer_, lev.r, coarse.b);
  coarse.x.setZero();
  for (int g = 0; g < spec_.cycle_gamma; ++g)
    run_cycle(l + 1, coarse.x, coarse.b);
  prolong(transfer_, coarse.x, lev.e);
  axpy(1.0, lev.e, x);
  relax(lev, x, b, spec_.nu2);
}

void MultigridSolver::relax(Level& lev, GridFunction& x, const GridFunction& b,
                            int sweeps) {
  const SchemeKind kind = spec_.scheme.kind;
  const SchemeParams& p = spec_.scheme.p;
  const int nf = lev.K.rows, np = nf - 1;
  const int n = lev.n;
  const double h2 = lev.h * lev.h;
  const auto& off = lev.K.row_offsets;
  for (int s = 0; s < sweeps; ++s) {
    copy_into(b, lev.r);
    apply_sub(lev.K, x, lev.r);
    GridFunction& u = lev.upd;
    switch (kind) {
      case SchemeKind::DWJ1:
      case SchemeKind::DWJ2: {
        for (int f = 0; f < np; ++f)
          u.fields[f] = lev.r.fields[f] / (p.alpha1 * lev.diag[f]);
        lev.g = lev.r.fields[np];
        for (int f = 0; f < np; ++f)
          apply_table(lev.K.at(np, f), off[np], off[f], n, u.fields[f],
                      lev.g, -1.0);
        if (kind == SchemeKind::DWJ1) {
          lev.dp = lev.g / (h2 * p.alpha2);
        } else {
          // two Jacobi sweeps with the diagonal surrogate h^2 / omegaJ
          lev.dp = (p.omegaJ / h2) * lev.g;
          lev.t1 = lev.g;
          apply_table(lev.Gp, kZeroOff, kZeroOff, n, lev.dp, lev.t1, -1.0);
          lev.dp += (p.omegaJ / h2) * lev.t1;
        }
        for (int f = 0; f < np; ++f)
          apply_table(lev.K.at(f, np), off[f], off[np], n, lev.dp,
                      u.fields[f], 1.0);
        u.fields[np].setZero();
        apply_table(lev.Ap, kZeroOff, kZeroOff, n, lev.dp, u.fields[np],
                    -1.0);
        break;
      }
      case SchemeKind::BSRExact:
      case SchemeKind::IBSR: {
        for (int f = 0; f < np; ++f)
          u.fields[f] = lev.r.fields[f] / lev.diag[f];
        lev.g = -lev.r.fields[np];
        for (int f = 0; f < np; ++f)
          apply_table(lev.K.at(np, f), off[np], off[f], n, u.fields[f],
                      lev.g, 1.0 / p.alpha);
        schur_correction(lev, lev.g, lev.dp);
        for (int f = 0; f < np; ++f) {
          u.fields[f] = lev.r.fields[f];
          apply_table(lev.K.at(f, np), off[f], off[np], n, lev.dp,
                      u.fields[f], -1.0);
          u.fields[f] /= p.alpha * lev.diag[f];
        }
        u.fields[np] = lev.dp;
        break;
      }
      case SchemeKind::UzawaSchur:
      case SchemeKind::UzawaMass:
      case SchemeKind::UzawaDiag: {
        for (int f = 0; f < np; ++f)
          u.fields[f] = lev.r.fields[f] / (p.alpha * lev.diag[f]);
        lev.g = -lev.r.fields[np];
        for (int f = 0; f < np; ++f)
          apply_table(lev.K.at(np, f), off[np], off[f], n, u.fields[f],
                      lev.g, 1.0);
        if (kind == SchemeKind::UzawaSchur)
          lev.schur_solver->solve(lev.g, lev.dp);
        else if (kind == SchemeKind::UzawaMass)
          lev.mass_solver->solve(lev.g, lev.dp);
        else
          lev.dp = lev.g / lev.sigma_h2;
        u.fields[np] = lev.dp;
        break;
      }
    }
    axpy(p.omega, u, x);
  }
}

void MultigridSolver::schur_correction(Level& lev, const VectorXd& g,
                                       VectorXd& dp) {
  const SchemeParams& p = spec_.scheme.p;
  if (spec_.scheme.kind == SchemeKind::BSRExact) {
    lev.schur_solver->solve(g, dp);
    return;
  }
  dp = VectorXd::Zero(g.size());
  if (p.inner_cycles >= 1) {
    for (int c = 0; c < p.inner_cycles; ++c) scalar_cycle(lev, 0, dp, g);
    return;
  }
  for (int s = 0; s < p.sweeps; ++s) {
    lev.t1 = g;
    apply_table(lev.S, kZeroOff, kZeroOff, lev.n, dp, lev.t1, -1.0);
    dp += (p.omegaJ / lev.s_diag) * lev.t1;
  }
}

void MultigridSolver::scalar_cycle(Level& lev, size_t j, VectorXd& x,
                                   const VectorXd& b) {
  ScalarLevel& sl = lev.inner[j];
  const double wj = spec_.scheme.p.omegaJ;
  sl.r = b;
  apply_table(sl.s, kZeroOff, kZeroOff, sl.n, x, sl.r, -1.0);
  if (j + 1 == lev.inner.size()) {
    x += sl.direct->solve(sl.r);
    return;
  }
  x += (wj / sl.diag) * sl.r;
  sl.r = b;
  apply_table(sl.s, kZeroOff, kZeroOff, sl.n, x, sl.r, -1.0);
  ScalarLevel& nx = lev.inner[j + 1];
  {
    GridFunction fine = make_grid_function(1, sl.n);
    GridFunction coarse = make_grid_function(1, nx.n);
    fine.fields[0] = sl.r;
    restrict_to_coarse(ptrans_, fine, coarse);
    nx.b = coarse.fields[0];
  }
  nx.x.setZero();
  for (int g = 0; g < spec_.cycle_gamma; ++g) scalar_cycle(lev, j + 1, nx.x, nx.b);
  {
    GridFunction fine = make_grid_function(1, sl.n);
    GridFunction coarse = make_grid_function(1, nx.n);
    coarse.fields[0] = nx.x;
    prolong(ptrans_, coarse, fine);
    x += fine.fields[0];
  }
  sl.r = b;
  apply_table(sl.s, kZeroOff, kZeroOff, sl.n, x, sl.r, -1.0);
  x += (wj / sl.diag) * sl.r;
}

MeasureResult measure_convergence(const SolveSpec& spec) {
  MultigridSolver mg(spec);
  GridFunction x = mg.make_vector();
  GridFunction b = mg.make_vector();
  GridFunction d = mg.make_vector();
  std::mt19937_64 eng(spec.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (auto& f : x.fields) {
    for (Eigen::Index i = 0; i < f.size(); ++i) f[i] = unif(eng);
    // Per-field constants are invisible to the periodic operator and the
    // cycle never touches them; removing them up front lets the iterate
    // decay to zero so rounding scales down with it and the defect stays
    // a clean geometric sequence over the whole run.
    f.array() -= f.mean();
  }

  MeasureResult res;
  mg.defect(x, b, d);
  const double nd0 = norm(d);
  res.defect_norms.push_back(nd0);
  if (nd0 == 0.0) return res;
  for (int k = 1; k <= spec.iterations; ++k) {
    mg.cycle(x, b);
    // Rounding deposits per-field constants at every magnitude the iterate
    // passes through; they are nullspace components on the periodic grid,
    // and left in place they pin the defect to the scale they were made at.
    for (auto& f : x.fields) f.array() -= f.mean();
    mg.defect(x, b, d);
    const double nd = norm(d);
    res.defect_norms.push_back(nd);
    res.iterations_used = k;
    if (!std::isfinite(nd) || nd > 1e150 * nd0) {
      res.diverged = true;
      break;
    }
    // Squared components underflow around 1e-160, so the norm collapses to
    // zero well before the denormal range; stop while it is still honest.
    if (nd <= 1e-140 * nd0) break;
  }
  int j = res.iterations_used;
  while (j > 0 && (!std::isfinite(res.defect_norms[j]) ||
                   res.defect_norms[j] == 0.0))
    --j;
  res.rho_hat = j == 0 ? std::numeric_limits<double>::infinity()
                       : std::pow(res.defect_norms[j] / nd0, 1.0 / j);
  return res;
}

}  // namespace bslfa
