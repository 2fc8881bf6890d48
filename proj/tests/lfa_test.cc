#include <gtest/gtest.h>

#include <cmath>

#include "bslfa/lfa.h"

namespace bslfa {
namespace {

constexpr double kH = 1.0 / 128;

RelaxScheme dwj1(double a1, double a2, double w) {
  RelaxScheme s{SchemeKind::DWJ1, {}};
  s.p.alpha1 = a1;
  s.p.alpha2 = a2;
  s.p.omega = w;
  return s;
}

RelaxScheme dwj2(double a1, double wJ, double w) {
  RelaxScheme s{SchemeKind::DWJ2, {}};
  s.p.alpha1 = a1;
  s.p.omegaJ = wJ;
  s.p.omega = w;
  return s;
}

RelaxScheme bsr(double alpha, double w) {
  RelaxScheme s{SchemeKind::BSRExact, {}};
  s.p.alpha = alpha;
  s.p.omega = w;
  return s;
}

RelaxScheme ibsr(double alpha, double wJ, int m, double w) {
  RelaxScheme s{SchemeKind::IBSR, {}};
  s.p.alpha = alpha;
  s.p.omegaJ = wJ;
  s.p.sweeps = m;
  s.p.omega = w;
  return s;
}

RelaxScheme uzawa(SchemeKind kind, double alpha, double w) {
  RelaxScheme s{kind, {}};
  s.p.alpha = alpha;
  s.p.omega = w;
  return s;
}

TEST(Smoothing, TheoremOptimaAtPrintedParameters) {
  const double w = 459.0 / 356.0;
  AnalysisResult r =
      smoothing_factor(dwj1(w * 9.0 / 8.0, 1.0, w), Disc::PoSD, kH, 64);
  ASSERT_TRUE(r.ok);
  EXPECT_NEAR(r.factor, kOptDWJ1PoSD, 1e-10);

  r = smoothing_factor(dwj1(1.0, 1.0, 108.0 / 97.0), Disc::PrSD, kH, 64);
  ASSERT_TRUE(r.ok);
  EXPECT_NEAR(r.factor, kOptDWJ1PrSD, 1e-10);

  for (Disc d : {Disc::PoSD, Disc::PrSD}) {
    r = smoothing_factor(bsr(1.0, 8.0 / 9.0), d, kH, 64);
    ASSERT_TRUE(r.ok);
    EXPECT_NEAR(r.factor, kOptBSR, 1e-10);

    r = smoothing_factor(dwj2(1.5, 1.0, 4.0 / 3.0), d, kH, 64);
    ASSERT_TRUE(r.ok);
    EXPECT_NEAR(r.factor, kOptDWJ2, 1e-10);
  }
}

TEST(Smoothing, Q2DWJPin) {
  const AnalysisResult r =
      smoothing_factor(dwj1(1.0, 1.0, 1.0), Disc::Q2Q1, kH, 32);
  ASSERT_TRUE(r.ok);
  EXPECT_NEAR(r.factor, 0.8468728870, 1e-8);
}

TEST(TwoGrid, Q1PinsAtN32) {
  TGSpec tg;
  tg.samples = 32;
  const struct {
    RelaxScheme s;
    Disc disc;
    double expect;
  } cases[] = {
      {dwj1(1.451, 1.0, 1.29), Disc::PoSD, 0.3793212550},
      {dwj2(1.5, 1.0, 4.0 / 3.0), Disc::PoSD, 0.1140454944},
      {bsr(1.0, 8.0 / 9.0), Disc::PoSD, 0.1111111111},
      {dwj1(1.0, 1.0, 108.0 / 97.0), Disc::PrSD, 0.4418987655},
      {bsr(1.2, 16.0 / 15.0), Disc::PrSD, 0.1111111111},
      {ibsr(1.1, 1.0, 2, 1.0), Disc::PoSD, 0.1576860486},
      {uzawa(SchemeKind::UzawaSchur, 1.0, 1.0), Disc::PoSD, 0.5158778778},
      {uzawa(SchemeKind::UzawaMass, 1.0, 1.0), Disc::PrSD, 0.2681024968},
      {uzawa(SchemeKind::UzawaDiag, 1.0, 1.0), Disc::PoSD, 0.5451595457},
  };
  for (const auto& c : cases) {
    const AnalysisResult r = two_grid_factor(c.s, c.disc, kH, tg);
    ASSERT_TRUE(r.ok) << to_string(c.s.kind) << ": " << r.message;
    EXPECT_NEAR(r.factor, c.expect, 1e-8) << to_string(c.s.kind);
  }
}

TEST(TwoGrid, GalerkinMatchesRediscForBSR) {
  TGSpec tg;
  tg.samples = 32;
  tg.coarsening = Coarsening::Galerkin;
  const AnalysisResult r =
      two_grid_factor(bsr(1.0, 8.0 / 9.0), Disc::PoSD, kH, tg);
  ASSERT_TRUE(r.ok) << r.message;
  EXPECT_NEAR(r.factor, 0.1111111111, 1e-8);
}

TEST(TwoGrid, Q2PinsAtN8) {
  TGSpec tg;
  tg.samples = 8;
  const struct {
    RelaxScheme s;
    int nu1, nu2;
    double expect;
  } cases[] = {
      {dwj1(1.0, 1.0, 1.0), 1, 0, 0.6274165110},
      {bsr(1.1, 1.05), 1, 1, 0.2371650273},
      {ibsr(1.1, 1.0, 2, 1.05), 1, 1, 0.3851759740},
      {uzawa(SchemeKind::UzawaSchur, 1.0, 1.0), 1, 1, 4.2559657217},
      {uzawa(SchemeKind::UzawaDiag, 1.0, 1.0), 1, 1, 4.0872141490},
  };
  for (const auto& c : cases) {
    tg.nu1 = c.nu1;
    tg.nu2 = c.nu2;
    const AnalysisResult r = two_grid_factor(c.s, Disc::Q2Q1, kH, tg);
    ASSERT_TRUE(r.ok) << to_string(c.s.kind) << ": " << r.message;
    EXPECT_NEAR(r.factor, c.expect, 1e-8) << to_string(c.s.kind);
  }
  RelaxScheme um = uzawa(SchemeKind::UzawaMass, 0.75, 0.7);
  um.p.delta = 0.75;
  tg.nu1 = tg.nu2 = 1;
  const AnalysisResult r = two_grid_factor(um, Disc::Q2Q1, kH, tg);
  ASSERT_TRUE(r.ok) << r.message;
  EXPECT_NEAR(r.factor, 0.3247238087, 1e-8);
}

TEST(Transfers, InterpQ1Pin) {
  EXPECT_NEAR(interp_symbol_q1({0.7, -1.3}), 0.559233851272586, 1e-15);
  EXPECT_NEAR(interp_symbol_q1({0.0, 0.0}), 1.0, 1e-15);
  EXPECT_NEAR(interp_symbol_q1({kPi, 0.3}), 0.0, 1e-15);
}

TEST(Transfers, InterpQ2Pins) {
  const Eigen::Matrix4cd P = interp_symbol_q2({0.7, -1.3}, 1, 0);
  EXPECT_NEAR(P(0, 0).real(), 0.25, 1e-13);
  EXPECT_NEAR(P(1, 0).real(), -0.1185072904975232, 1e-13);
  EXPECT_NEAR(P(1, 1).real(), 0.1285866777957942, 1e-13);
  EXPECT_NEAR(P(2, 2).real(), 0.298531424455896, 1e-13);
  EXPECT_NEAR(P(3, 1).real(), 0.08867440899864637, 1e-13);
  EXPECT_NEAR(P(3, 3).real(), 0.1535486563537191, 1e-13);
  EXPECT_NEAR(P(1, 3).real(), 0.1285866777957942, 1e-13);
  EXPECT_LT(P.imag().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Transfers, RestrictQ2Pins) {
  const Eigen::Matrix4cd R = restrict_symbol_q2({0.7, -1.3}, 1, 0);
  EXPECT_NEAR(R(0, 0).real(), 1.0, 1e-13);
  EXPECT_NEAR(R(0, 1).real(), -0.4740291619900929, 1e-13);
  EXPECT_NEAR(R(1, 1).real(), 0.5143467111831771, 1e-13);
  EXPECT_NEAR(R(2, 2).real(), 1.194125697823584, 1e-13);
  EXPECT_NEAR(R(1, 3).real(), 0.3546976359945855, 1e-13);
  EXPECT_NEAR(R(3, 3).real(), 0.6141946254148767, 1e-13);
  EXPECT_LT(R.imag().cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Transfers, InterpQ2ReproducesConstants) {
  // Interpolating the constant coarse vector gives the constant fine vector:
  // all of it lands on the zero harmonic, none on the aliases.
  const Eigen::Vector4cd ones = Eigen::Vector4cd::Ones();
  for (int k = 0; k < 4; ++k) {
    const Eigen::Vector4cd v =
        interp_symbol_q2({0.0, 0.0}, kHarmonics[k][0], kHarmonics[k][1]) *
        ones;
    for (int i = 0; i < 4; ++i)
      EXPECT_NEAR(std::abs(v(i)), k == 0 ? 1.0 : 0.0, 1e-13) << k << "," << i;
  }
}

TEST(Spectrum, RowCountAndWidth) {
  TGSpec tg;
  tg.samples = 16;
  const auto rows =
      two_grid_spectrum(bsr(1.0, 8.0 / 9.0), Disc::PoSD, kH, tg);
  EXPECT_EQ(rows.size(), 8u * 8u - 1u);
  for (const auto& row : rows) EXPECT_EQ(row.eigs.size(), 12u);
}

TEST(Optimize, AxisValues) {
  EXPECT_EQ(axis_values({"omega", 0.5, 0.5, 0.0}),
            (std::vector<double>{0.5}));
  EXPECT_EQ(axis_values({"omega", 0.5, 1.0, -1.0}),
            (std::vector<double>{0.5}));
  const auto v = axis_values({"omega", 0.0, 1.0, 0.25});
  ASSERT_EQ(v.size(), 5u);
  EXPECT_NEAR(v[3], 0.75, 1e-15);
}

TEST(Optimize, SetParamThrowsOnUnknownName) {
  SchemeParams p;
  set_param(p, "omegaJ", 1.25);
  EXPECT_EQ(p.omegaJ, 1.25);
  EXPECT_THROW(set_param(p, "nu1", 1.0), std::invalid_argument);
}

TEST(Optimize, RecoversBSRSmoothingOptimum) {
  TGSpec tg;
  tg.samples = 32;
  RelaxScheme s = bsr(1.0, 1.0);
  const OptimizeResult r =
      optimize_params(s, Disc::PoSD, kH, Objective::Smoothing, tg,
                      {{"omega", 0.80, 1.00, 1.0 / 90.0}});
  ASSERT_TRUE(r.ok);
  EXPECT_NEAR(r.factor, 1.0 / 3.0, 1e-6);
  ASSERT_EQ(r.params.size(), 1u);
  EXPECT_EQ(r.params[0].first, "omega");
  EXPECT_NEAR(r.params[0].second, 8.0 / 9.0, 1e-9);
}

TEST(Optimize, TiesKeepSmallestTuple) {
  // A flat objective over a degenerate two-point grid keeps the first tuple.
  TGSpec tg;
  tg.samples = 8;
  RelaxScheme s = bsr(1.0, 8.0 / 9.0);
  const OptimizeResult r =
      optimize_params(s, Disc::PoSD, kH, Objective::TwoGrid, tg,
                      {{"sigma", 1.0, 2.0, 1.0}});
  ASSERT_TRUE(r.ok);
  EXPECT_EQ(r.params[0].second, 1.0);
}

}  // namespace
}  // namespace bslfa
