#include "bslfa/lfa.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bslfa {

namespace {

double spectral_radius(const Eigen::MatrixXcd& m) {
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m, false);
  return es.eigenvalues().cwiseAbs().maxCoeff();
}

/// 1D embedding weights, displacements in half-mesh units.
struct Entry {
  int d;
  double w;
};
using Table = std::vector<Entry>;

// fine type v/m (offset 0 or 1), coarse type V/M (offset 0 or 2 on the
// fine half-lattice; coarse spacing is 4).
const Table& table_q2(int tf, int tc) {
  static const Table vv = {{0, 1.0}};
  static const Table vm = {{0, 1.0}};
  static const Table mv = {{-3, -0.125}, {-1, 0.375}, {1, 0.375}, {3, -0.125}};
  static const Table mm = {{-1, 0.75}, {1, 0.75}};
  if (tf == 0) return tc == 0 ? vv : vm;
  return tc == 0 ? mv : mm;
}

/// Coefficient of the fine harmonic theta + pi*a for the coarse mode 2*theta.
Complex interp_1d(const Table& tab, int tf, int tc, double theta, int a) {
  const int dc = 2 * tc;
  Complex acc = 0.0;
  for (int k = 0; k < 2; ++k) {
    const int x = 2 * k + tf;
    Complex f = 0.0;
    for (const Entry& e : tab) {
      if ((((x - e.d - dc) % 4) + 4) % 4 != 0) continue;
      f += e.w * std::exp(Complex(0.0, -theta * e.d / 2.0));
    }
    acc += f * std::exp(Complex(0.0, -kPi * a * x / 2.0));
  }
  return acc / 2.0;
}

constexpr int kTypeX[4] = {0, 1, 0, 1};  // v/m along x per sub-grid type
constexpr int kTypeY[4] = {0, 0, 1, 1};

}  // namespace

double interp_symbol_q1(const Frequency& t) {
  const double c1 = std::cos(t.t1 / 2), c2 = std::cos(t.t2 / 2);
  return c1 * c1 * c2 * c2;
}

Eigen::Matrix4cd interp_symbol_q2(const Frequency& base, int a1, int a2) {
  Eigen::Matrix4cd b;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      b(i, j) =
          interp_1d(table_q2(kTypeX[i], kTypeX[j]), kTypeX[i], kTypeX[j],
                    base.t1, a1) *
          interp_1d(table_q2(kTypeY[i], kTypeY[j]), kTypeY[i], kTypeY[j],
                    base.t2, a2);
  return b;
}

Eigen::Matrix4cd restrict_symbol_q2(const Frequency& base, int a1, int a2) {
  const double u1 = base.t1 + kPi * a1, u2 = base.t2 + kPi * a2;
  Eigen::Matrix4cd b;
  for (int j = 0; j < 4; ++j) {
    // Coarse sub-grid offset in mesh units enters as an aliasing phase.
    const double dlx = 0.5 * kTypeX[j], dly = 0.5 * kTypeY[j];
    const Complex phase =
        std::exp(Complex(0.0, 2.0 * kPi * (a1 * dlx + a2 * dly)));
    for (int i = 0; i < 4; ++i) {
      Complex sx = 0.0, sy = 0.0;
      for (const Entry& e : table_q2(kTypeX[i], kTypeX[j]))
        sx += e.w * std::exp(Complex(0.0, u1 * e.d / 2.0));
      for (const Entry& e : table_q2(kTypeY[i], kTypeY[j]))
        sy += e.w * std::exp(Complex(0.0, u2 * e.d / 2.0));
      b(j, i) = phase * sx * sy;
    }
  }
  return b;
}

AnalysisResult smoothing_factor(const RelaxScheme& s, Disc disc, double h,
                                int samples) {
  const std::vector<double> axis = sample_axis(samples);
  AnalysisResult res;
  for (int k1 = 0; k1 < samples; ++k1) {
    for (int k2 = 0; k2 < samples; ++k2) {
      if (k1 < samples / 2 && k2 < samples / 2) continue;
      const Frequency t{axis[k1], axis[k2]};
      const double r = spectral_radius(error_symbol(s, disc, t, h));
      if (!std::isfinite(r)) {
        res.ok = false;
        res.message = "relaxation symbol not finite on the high range";
        return res;
      }
      if (r > res.factor) {
        res.factor = r;
        res.argmax = t;
      }
    }
  }
  return res;
}

Eigen::MatrixXcd two_grid_symbol(const RelaxScheme& s, Disc disc,
                                 const Frequency& t, double h,
                                 const TGSpec& tg) {
  const int n = system_size(disc);
  const int nv = velocity_block_size(disc);
  Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(4 * n, 4 * n);
  Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(4 * n, 4 * n);
  Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(4 * n, n);
  Eigen::MatrixXcd R = Eigen::MatrixXcd::Zero(n, 4 * n);
  for (int k = 0; k < 4; ++k) {
    const int a1 = kHarmonics[k][0], a2 = kHarmonics[k][1];
    const Frequency u = harmonic(t, k);
    L.block(k * n, k * n, n, n) = system_symbol(disc, u, h);
    S.block(k * n, k * n, n, n) = error_symbol(s, disc, u, h);
    const double pq1 = interp_symbol_q1(u);
    if (disc == Disc::Q2Q1) {
      const Eigen::Matrix4cd Pb = interp_symbol_q2(t, a1, a2);
      const Eigen::Matrix4cd Rb = restrict_symbol_q2(t, a1, a2);
      for (int c = 0; c < 2; ++c) {
        P.block(k * n + 4 * c, 4 * c, 4, 4) = Pb;
        R.block(4 * c, k * n + 4 * c, 4, 4) = Rb;
      }
      P(k * n + 2 * nv, 2 * nv) = pq1;
      R(2 * nv, k * n + 2 * nv) = 4.0 * pq1;
    } else {
      P.block(k * n, 0, n, n) = pq1 * Eigen::Matrix3cd::Identity();
      R.block(0, k * n, n, n) = 4.0 * pq1 * Eigen::Matrix3cd::Identity();
    }
  }
  Eigen::MatrixXcd Lc;
  if (tg.coarsening == Coarsening::Galerkin) {
    Lc = R * L * P;
  } else {
    Lc = system_symbol(disc, {2 * t.t1, 2 * t.t2}, 2 * h);
  }
  const Eigen::MatrixXcd cgc =
      Eigen::MatrixXcd::Identity(4 * n, 4 * n) -
      P * Lc.partialPivLu().solve(R * L);
  Eigen::MatrixXcd e = cgc;
  for (int i = 0; i < tg.nu1; ++i) e = e * S;
  for (int i = 0; i < tg.nu2; ++i) e = S * e;
  return e;
}

namespace {

// The Galerkin coarse symbol differs from the rediscretized one only in the
// stabilization block, so both are singular at the same frequencies and one
// check covers either coarsening.
bool coarse_symbol_singular(Disc disc, const Frequency& t, double h) {
  const Eigen::MatrixXcd Lc =
      system_symbol(disc, {2 * t.t1, 2 * t.t2}, 2 * h);
  Eigen::FullPivLU<Eigen::MatrixXcd> lu(Lc);
  lu.setThreshold(1e-12);
  return !lu.isInvertible();
}

}  // namespace

AnalysisResult two_grid_factor(const RelaxScheme& s, Disc disc, double h,
                               const TGSpec& tg) {
  const std::vector<double> low = sample_axis_low(tg.samples);
  AnalysisResult res;
  for (double t1 : low) {
    for (double t2 : low) {
      const Frequency t{t1, t2};
      if (is_zero_frequency(t)) continue;
      if (coarse_symbol_singular(disc, t, h)) {
        res.ok = false;
        res.message = "singular coarse symbol away from the zero frequency";
        return res;
      }
      const double r = spectral_radius(two_grid_symbol(s, disc, t, h, tg));
      if (!std::isfinite(r)) {
        res.ok = false;
        res.message = "two-grid symbol not finite";
        return res;
      }
      if (r > res.factor) {
        res.factor = r;
        res.argmax = t;
      }
    }
  }
  return res;
}

std::vector<SpectrumRow> two_grid_spectrum(const RelaxScheme& s, Disc disc,
                                           double h, const TGSpec& tg) {
  const std::vector<double> low = sample_axis_low(tg.samples);
  std::vector<SpectrumRow> rows;
  rows.reserve(low.size() * low.size());
  for (double t1 : low) {
    for (double t2 : low) {
      const Frequency t{t1, t2};
      if (is_zero_frequency(t)) continue;
      Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(
          two_grid_symbol(s, disc, t, h, tg), false);
      SpectrumRow row;
      row.t = t;
      for (int i = 0; i < es.eigenvalues().size(); ++i)
        row.eigs.push_back(es.eigenvalues()(i));
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<double> axis_values(const ParamAxis& axis) {
  if (axis.step <= 0.0 || axis.hi <= axis.lo) return {axis.lo};
  std::vector<double> v;
  for (double x = axis.lo; x <= axis.hi + 1e-12; x += axis.step)
    v.push_back(x);
  return v;
}

void set_param(SchemeParams& p, const std::string& name, double value) {
  if (name == "alpha") p.alpha = value;
  else if (name == "alpha1") p.alpha1 = value;
  else if (name == "alpha2") p.alpha2 = value;
  else if (name == "omega") p.omega = value;
  else if (name == "omegaJ") p.omegaJ = value;
  else if (name == "delta") p.delta = value;
  else if (name == "sigma") p.sigma = value;
  else throw std::invalid_argument("unknown parameter: " + name);
}

OptimizeResult optimize_params(RelaxScheme s, Disc disc, double h,
                               Objective objective, const TGSpec& tg,
                               const std::vector<ParamAxis>& axes) {
  std::vector<std::vector<double>> grids;
  grids.reserve(axes.size());
  for (const ParamAxis& a : axes) grids.push_back(axis_values(a));

  OptimizeResult best;
  best.factor = std::numeric_limits<double>::infinity();
  std::vector<size_t> idx(axes.size(), 0);
  while (true) {
    for (size_t i = 0; i < axes.size(); ++i)
      set_param(s.p, axes[i].name, grids[i][idx[i]]);
    const AnalysisResult r =
        objective == Objective::Smoothing
            ? smoothing_factor(s, disc, h, tg.samples)
            : two_grid_factor(s, disc, h, tg);
    if (r.ok && r.factor < best.factor) {
      best.factor = r.factor;
      best.params.clear();
      for (size_t i = 0; i < axes.size(); ++i)
        best.params.emplace_back(axes[i].name, grids[i][idx[i]]);
    }
    size_t k = axes.size();
    while (k > 0) {
      --k;
      if (++idx[k] < grids[k].size()) break;
      idx[k] = 0;
      if (k == 0) {
        best.ok = std::isfinite(best.factor);
        return best;
      }
    }
    if (axes.empty()) {
      best.ok = std::isfinite(best.factor);
      return best;
    }
  }
}

Eigen::MatrixXd parameter_sweep(RelaxScheme s, Disc disc, double h,
                                const TGSpec& tg, const ParamAxis& axis1,
                                const ParamAxis& axis2) {
  const std::vector<double> v1 = axis_values(axis1), v2 = axis_values(axis2);
  Eigen::MatrixXd m(v1.size(), v2.size());
  for (size_t i = 0; i < v1.size(); ++i) {
    for (size_t j = 0; j < v2.size(); ++j) {
      set_param(s.p, axis1.name, v1[i]);
      set_param(s.p, axis2.name, v2[j]);
      const AnalysisResult r = two_grid_factor(s, disc, h, tg);
      m(i, j) = r.ok ? r.factor : std::numeric_limits<double>::quiet_NaN();
    }
  }
  return m;
}

}  // namespace bslfa
