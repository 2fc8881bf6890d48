#include "bslfa/mgsolver.h"

#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "bslfa/discretization.h"
#include "bslfa/lfa.h"

namespace bslfa {
namespace {

RelaxScheme scheme(SchemeKind kind, SchemeParams p) { return {kind, p}; }

SchemeParams params(double alpha, double omega) {
  SchemeParams p;
  p.alpha = alpha;
  p.omega = omega;
  return p;
}

SchemeParams dwj_params(double a1, double a2, double omega, double wj = 1.0) {
  SchemeParams p;
  p.alpha1 = a1;
  p.alpha2 = a2;
  p.omega = omega;
  p.omegaJ = wj;
  return p;
}

void plane_wave(Disc disc, int n, const Frequency& t, GridFunction& re,
                GridFunction& im) {
  const int nf = field_count(disc);
  re = make_grid_function(nf, n);
  im = make_grid_function(nf, n);
  for (int f = 0; f < nf; ++f) {
    const auto off = field_offset(disc, f);
    for (int iy = 0; iy < n; ++iy)
      for (int ix = 0; ix < n; ++ix) {
        const double ph = 0.5 * (t.t1 * (2 * ix + off[0]) +
                                 t.t2 * (2 * iy + off[1]));
        re.at(f, ix, iy) = std::cos(ph);
        im.at(f, ix, iy) = std::sin(ph);
      }
  }
}

// One relaxation sweep on a plane-wave error reproduces the
// error-propagation symbol coefficientwise.
void check_sweep_symbol(Disc disc, const RelaxScheme& s) {
  const int n = 8;
  const double h = 1.0 / n;
  SolveSpec spec;
  spec.disc = disc;
  spec.scheme = s;
  spec.n = n;
  spec.h = h;
  MultigridSolver mg(spec);
  const GridFunction b = mg.make_vector();
  const int nf = field_count(disc);
  const int waves[3][2] = {{1, 2}, {3, 5}, {7, 1}};
  for (const auto& kv : waves) {
    const Frequency t{2.0 * kPi * kv[0] / n, 2.0 * kPi * kv[1] / n};
    GridFunction re, im;
    plane_wave(disc, n, t, re, im);
    mg.relax_finest(re, b);
    mg.relax_finest(im, b);
    const Eigen::MatrixXcd sym = error_symbol(s, disc, t, h);
    for (int r = 0; r < nf; ++r) {
      Complex coef = 0.0;
      for (int c = 0; c < nf; ++c) coef += sym(r, c);
      const auto off = field_offset(disc, r);
      for (int iy = 0; iy < n; ++iy)
        for (int ix = 0; ix < n; ++ix) {
          const double ph = 0.5 * (t.t1 * (2 * ix + off[0]) +
                                   t.t2 * (2 * iy + off[1]));
          const Complex expect = coef * std::exp(Complex(0.0, ph));
          ASSERT_NEAR(re.at(r, ix, iy), expect.real(), 1e-11)
              << to_string(s.kind) << " field " << r;
          ASSERT_NEAR(im.at(r, ix, iy), expect.imag(), 1e-11)
              << to_string(s.kind) << " field " << r;
        }
    }
  }
}

TEST(MGSolverTest, SweepMatchesErrorSymbolDistributive) {
  check_sweep_symbol(Disc::PoSD,
                     scheme(SchemeKind::DWJ1, dwj_params(1.451, 1.0, 1.29)));
  check_sweep_symbol(Disc::PrSD,
                     scheme(SchemeKind::DWJ1, dwj_params(1.0, 1.0, 108.0 / 97)));
  check_sweep_symbol(Disc::Q2Q1,
                     scheme(SchemeKind::DWJ1, dwj_params(1.0, 1.0, 1.0)));
  check_sweep_symbol(Disc::PoSD,
                     scheme(SchemeKind::DWJ2, dwj_params(1.5, 1.0, 4.0 / 3)));
  check_sweep_symbol(
      Disc::PrSD, scheme(SchemeKind::DWJ2, dwj_params(1.5, 1.0, 4.0 / 3, 1.2)));
}

TEST(MGSolverTest, SweepMatchesErrorSymbolSchurBased) {
  check_sweep_symbol(Disc::PoSD,
                     scheme(SchemeKind::BSRExact, params(1.0, 8.0 / 9)));
  check_sweep_symbol(Disc::PrSD,
                     scheme(SchemeKind::BSRExact, params(1.2, 16.0 / 15)));
  check_sweep_symbol(Disc::Q2Q1,
                     scheme(SchemeKind::BSRExact, params(1.1, 1.05)));
  SchemeParams p = params(1.1, 1.0);
  p.sweeps = 2;
  check_sweep_symbol(Disc::PoSD, scheme(SchemeKind::IBSR, p));
  p = params(1.2, 1.2);
  p.omegaJ = 0.9;
  p.sweeps = 2;
  check_sweep_symbol(Disc::PrSD, scheme(SchemeKind::IBSR, p));
  p = params(1.1, 1.05);
  p.sweeps = 3;
  check_sweep_symbol(Disc::Q2Q1, scheme(SchemeKind::IBSR, p));
}

TEST(MGSolverTest, SweepMatchesErrorSymbolUzawa) {
  check_sweep_symbol(Disc::PoSD,
                     scheme(SchemeKind::UzawaSchur, params(1.0, 1.0)));
  SchemeParams p = params(1.0, 1.0);
  p.delta = 1.0;
  check_sweep_symbol(Disc::PrSD, scheme(SchemeKind::UzawaMass, p));
  p = params(0.75, 0.7);
  p.delta = 0.75;
  check_sweep_symbol(Disc::Q2Q1, scheme(SchemeKind::UzawaMass, p));
  check_sweep_symbol(Disc::PoSD,
                     scheme(SchemeKind::UzawaDiag, params(1.0, 1.0)));
  p = params(1.0, 0.9);
  p.sigma = 0.3;
  check_sweep_symbol(Disc::PrSD, scheme(SchemeKind::UzawaDiag, p));
}

TEST(MGSolverTest, CoarsestLevelSolvesDirectly) {
  for (Disc disc : {Disc::PoSD, Disc::PrSD, Disc::Q2Q1}) {
    SolveSpec spec;
    spec.disc = disc;
    spec.scheme = scheme(SchemeKind::BSRExact, params(1.0, 8.0 / 9));
    spec.n = 2;
    spec.coarsest_n = 2;
    MultigridSolver mg(spec);
    EXPECT_EQ(mg.levels(), 1);
    GridFunction x = mg.make_vector();
    GridFunction b = mg.make_vector();
    GridFunction d = mg.make_vector();
    std::mt19937 eng(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (auto& f : x.fields)
      for (Eigen::Index i = 0; i < f.size(); ++i) f[i] = u(eng);
    mg.defect(x, b, d);
    const double nd0 = norm(d);
    mg.cycle(x, b);
    mg.defect(x, b, d);
    EXPECT_LT(norm(d), 1e-10 * nd0);
  }
}

double two_grid_prediction(const RelaxScheme& s, Disc disc, int nu1, int nu2,
                           Coarsening c, int samples) {
  TGSpec tg;
  tg.nu1 = nu1;
  tg.nu2 = nu2;
  tg.coarsening = c;
  tg.samples = samples;
  const AnalysisResult r = two_grid_factor(s, disc, 1.0 / 128, tg);
  EXPECT_TRUE(r.ok) << r.message;
  return r.factor;
}

double measured_rho(Disc disc, const RelaxScheme& s, int nu1, int nu2,
                    Coarsening c, int n) {
  SolveSpec spec;
  spec.disc = disc;
  spec.scheme = s;
  spec.nu1 = nu1;
  spec.nu2 = nu2;
  spec.coarsening = c;
  spec.n = n;
  spec.coarsest_n = n / 2;  // two levels: the cycle is the two-grid operator
  spec.iterations = 600;    // long run so the dominant mode sets the mean
  const MeasureResult res = measure_convergence(spec);
  EXPECT_FALSE(res.diverged);
  return res.rho_hat;
}

TEST(MGSolverTest, TwoLevelRhoMatchesAnalysis) {
  struct Case {
    Disc disc;
    RelaxScheme s;
    int nu1, nu2;
    Coarsening c;
    double tol;
  };
  const std::vector<Case> cases = {
      {Disc::PoSD, scheme(SchemeKind::DWJ1, dwj_params(1.451, 1.0, 1.29)),
       1, 1, Coarsening::Rediscretize, 0.02},
      {Disc::PoSD, scheme(SchemeKind::BSRExact, params(1.0, 8.0 / 9)), 1, 1,
       Coarsening::Rediscretize, 0.01},
      {Disc::PoSD, scheme(SchemeKind::BSRExact, params(1.0, 8.0 / 9)), 1, 1,
       Coarsening::Galerkin, 0.01},
      {Disc::PrSD, scheme(SchemeKind::DWJ2, dwj_params(1.5, 1.0, 4.0 / 3)),
       1, 1, Coarsening::Rediscretize, 0.02},
      {Disc::PoSD, scheme(SchemeKind::UzawaSchur, params(1.0, 1.0)), 1, 1,
       Coarsening::Rediscretize, 0.02},
      {Disc::PoSD, scheme(SchemeKind::UzawaDiag, params(1.0, 1.0)), 1, 1,
       Coarsening::Rediscretize, 0.02},
  };
  for (const auto& cs : cases) {
    const double rho =
        two_grid_prediction(cs.s, cs.disc, cs.nu1, cs.nu2, cs.c, 16);
    const double hat = measured_rho(cs.disc, cs.s, cs.nu1, cs.nu2, cs.c, 16);
    EXPECT_NEAR(hat, rho, cs.tol) << to_string(cs.s.kind);
  }
  SchemeParams ip = params(1.1, 1.0);
  ip.sweeps = 2;
  const RelaxScheme ibsr = scheme(SchemeKind::IBSR, ip);
  EXPECT_NEAR(measured_rho(Disc::PoSD, ibsr, 1, 1,
                           Coarsening::Rediscretize, 16),
              two_grid_prediction(ibsr, Disc::PoSD, 1, 1,
                                  Coarsening::Rediscretize, 16),
              0.02);
  SchemeParams mp = params(1.0, 1.0);
  mp.delta = 1.0;
  const RelaxScheme um = scheme(SchemeKind::UzawaMass, mp);
  EXPECT_NEAR(measured_rho(Disc::PrSD, um, 1, 1,
                           Coarsening::Rediscretize, 16),
              two_grid_prediction(um, Disc::PrSD, 1, 1,
                                  Coarsening::Rediscretize, 16),
              0.02);
}

TEST(MGSolverTest, TwoLevelRhoMatchesAnalysisMixedOrder) {
  // One relaxation sweep per cycle leaves the harmonics over the excluded
  // zero frequency decaying slower than the analyzed sup at these
  // parameters; two sweeps put the analyzed frequencies back in charge.
  const RelaxScheme dwj = scheme(SchemeKind::DWJ1, dwj_params(1.0, 1.0, 1.0));
  EXPECT_NEAR(
      measured_rho(Disc::Q2Q1, dwj, 1, 1, Coarsening::Rediscretize, 8),
      two_grid_prediction(dwj, Disc::Q2Q1, 1, 1, Coarsening::Rediscretize, 8),
      0.03);
  const RelaxScheme bsr = scheme(SchemeKind::BSRExact, params(1.1, 1.05));
  EXPECT_NEAR(
      measured_rho(Disc::Q2Q1, bsr, 1, 1, Coarsening::Rediscretize, 8),
      two_grid_prediction(bsr, Disc::Q2Q1, 1, 1, Coarsening::Rediscretize, 8),
      0.02);
}

TEST(MGSolverTest, DeepWCycleHoldsTwoGridRate) {
  SolveSpec spec;
  spec.disc = Disc::PoSD;
  spec.scheme = scheme(SchemeKind::BSRExact, params(1.0, 8.0 / 9));
  spec.n = 32;
  spec.coarsest_n = 2;
  const MeasureResult res = measure_convergence(spec);
  EXPECT_FALSE(res.diverged);
  EXPECT_NEAR(res.rho_hat, 1.0 / 9, 0.02);
}

TEST(MGSolverTest, InnerCyclesApproachExactSchurSolves) {
  SchemeParams p = params(1.0, 8.0 / 9);
  p.inner_cycles = 2;
  SolveSpec spec;
  spec.disc = Disc::PoSD;
  spec.scheme = scheme(SchemeKind::IBSR, p);
  spec.n = 16;
  spec.coarsest_n = 2;
  const MeasureResult inner = measure_convergence(spec);
  spec.scheme = scheme(SchemeKind::BSRExact, params(1.0, 8.0 / 9));
  const MeasureResult exact = measure_convergence(spec);
  EXPECT_FALSE(inner.diverged);
  EXPECT_NEAR(inner.rho_hat, exact.rho_hat, 0.02);
}

TEST(MGSolverTest, DivergenceTripsGuard) {
  SolveSpec spec;
  spec.disc = Disc::PoSD;
  spec.scheme = scheme(SchemeKind::DWJ1, dwj_params(1.0, 1.0, 60.0));
  spec.n = 8;
  const MeasureResult res = measure_convergence(spec);
  EXPECT_TRUE(res.diverged);
  EXPECT_LT(res.iterations_used, 100);
  EXPECT_GT(res.rho_hat, 1.0);
  EXPECT_EQ(static_cast<int>(res.defect_norms.size()),
            res.iterations_used + 1);
}

TEST(MGSolverTest, SchemeGuards) {
  SolveSpec spec;
  spec.disc = Disc::Q2Q1;
  spec.scheme = scheme(SchemeKind::DWJ2, dwj_params(1.5, 1.0, 4.0 / 3));
  spec.n = 8;
  EXPECT_THROW(MultigridSolver{spec}, std::invalid_argument);
  spec.disc = Disc::PoSD;
  spec.n = 7;
  EXPECT_THROW(MultigridSolver{spec}, std::invalid_argument);
}

}  // namespace
}  // namespace bslfa
