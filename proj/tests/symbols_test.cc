#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "bslfa/discretization.h"
#include "bslfa/symbols_q1.h"
#include "bslfa/symbols_q2.h"

namespace bslfa {
namespace {

const Frequency kT{0.7, -1.3};
constexpr double kH = 1.0 / 64;

TEST(SymbolsQ1, PinnedValues) {
  EXPECT_NEAR(q1::laplace(kT), 1.705646803818925, 1e-14);
  EXPECT_NEAR(q1::mass(kT, kH), 1.700650070800624e-4, 1e-17);
  const Complex b1 = q1::grad_x(kT, kH), b2 = q1::grad_y(kT, kH);
  EXPECT_NEAR(b1.real(), 0.0, 1e-16);
  EXPECT_NEAR(b1.imag(), 0.007608139849951589, 1e-15);
  EXPECT_NEAR(b2.real(), 0.0, 1e-16);
  EXPECT_NEAR(b2.imag(), -0.01387544958825388, 1e-15);
  EXPECT_NEAR(q1::stab(kT, kH, Disc::PoSD), 1.735073652973353e-5, 1e-18);
  EXPECT_NEAR(q1::stab(kT, kH, Disc::PrSD), 3.353330510921622e-5, 1e-18);
}

TEST(SymbolsQ1, ZeroFrequencyAnnihilatesConstants) {
  const Frequency z{0.0, 0.0};
  EXPECT_NEAR(q1::laplace(z), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(q1::grad_x(z, kH)), 0.0, 1e-18);
  EXPECT_NEAR(std::abs(q1::grad_y(z, kH)), 0.0, 1e-18);
  EXPECT_NEAR(q1::stab(z, kH, Disc::PoSD), 0.0, 1e-18);
  EXPECT_NEAR(q1::stab(z, kH, Disc::PrSD), 0.0, 1e-18);
  EXPECT_NEAR(q1::mass(z, kH), kH * kH, 1e-18);
}

TEST(SymbolsQ1, SystemIsHermitian) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-kPi / 2, 3 * kPi / 2);
  for (int i = 0; i < 20; ++i) {
    const Frequency t{u(rng), u(rng)};
    for (Disc d : {Disc::PoSD, Disc::PrSD}) {
      const Eigen::MatrixXcd L = system_symbol(d, t, kH);
      EXPECT_LT((L - L.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
    }
  }
}

TEST(SymbolsQ1, PrSDStabDominatesPoSD) {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-kPi / 2, 3 * kPi / 2);
  for (int i = 0; i < 50; ++i) {
    const Frequency t{u(rng), u(rng)};
    EXPECT_GE(q1::stab(t, kH, Disc::PoSD), -1e-18);
    EXPECT_GE(q1::stab(t, kH, Disc::PrSD), q1::stab(t, kH, Disc::PoSD) - 1e-18);
  }
}

TEST(SymbolsQ2, LaplacePinnedValues) {
  const Eigen::Matrix4cd A2 = q2::laplace(kT, kH);
  EXPECT_NEAR(A2(0, 0).real(), 2.333057252173788, 1e-13);
  EXPECT_NEAR(A2(1, 1).real(), 3.911111111111111, 1e-13);
  EXPECT_NEAR(A2(2, 2).real(), 3.911111111111111, 1e-13);
  EXPECT_NEAR(A2(3, 3).real(), 5.688888888888888, 1e-13);
  EXPECT_NEAR(A2(0, 1).real(), -0.6398176812429809, 1e-13);
  EXPECT_NEAR(A2(0, 3).real(), -1.063565365328886, 1e-13);
  EXPECT_NEAR(A2(1, 2).real(), -1.063565365328886, 1e-13);
  EXPECT_NEAR(A2(2, 3).real(), -2.003995120741075, 1e-13);
  EXPECT_LT(A2.imag().cwiseAbs().maxCoeff(), 1e-15);
}

TEST(SymbolsQ2, GradientPinnedValues) {
  const Eigen::Vector4cd bx = q2::grad_x(kT, kH), by = q2::grad_y(kT, kH);
  const double ex[4] = {0.001118433484787658, 0.00238123477399619,
                        0.001780733553988433, 0.003791324848239979};
  const double ey[4] = {-0.001672844071904849, -0.003142848147991827,
                        -0.004202683373166941, -0.007895772162980806};
  for (int i = 0; i < 4; ++i) {
    EXPECT_NEAR(bx(i).real(), 0.0, 1e-17) << i;
    EXPECT_NEAR(bx(i).imag(), ex[i], 1e-15) << i;
    EXPECT_NEAR(by(i).real(), 0.0, 1e-17) << i;
    EXPECT_NEAR(by(i).imag(), ey[i], 1e-15) << i;
  }
}

TEST(SymbolsQ2, GradYIsCoordinateSwapOfGradX) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> u(-kPi / 2, 3 * kPi / 2);
  for (int i = 0; i < 20; ++i) {
    const Frequency t{u(rng), u(rng)};
    const Eigen::Vector4cd by = q2::grad_y(t, kH);
    const Eigen::Vector4cd bs = q2::grad_x({t.t2, t.t1}, kH);
    EXPECT_LT(std::abs(by(0) - bs(0)), 1e-16);
    EXPECT_LT(std::abs(by(1) - bs(2)), 1e-16);
    EXPECT_LT(std::abs(by(2) - bs(1)), 1e-16);
    EXPECT_LT(std::abs(by(3) - bs(3)), 1e-16);
  }
}

TEST(SymbolsQ2, SystemIsHermitianWithZeroStabilization) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-kPi / 2, 3 * kPi / 2);
  for (int i = 0; i < 20; ++i) {
    const Frequency t{u(rng), u(rng)};
    const Eigen::MatrixXcd L = system_symbol(Disc::Q2Q1, t, kH);
    ASSERT_EQ(L.rows(), 9);
    EXPECT_LT((L - L.adjoint()).cwiseAbs().maxCoeff(), 1e-15);
    EXPECT_NEAR(std::abs(L(8, 8)), 0.0, 1e-18);
  }
}

TEST(SymbolsQ2, StiffnessNullspaceAndMassPartition) {
  const Eigen::Matrix2cd A0 = q2::stiffness_1d(0.0, kH);
  EXPECT_LT(std::abs(A0(0, 0) + A0(0, 1)), 1e-13);
  EXPECT_LT(std::abs(A0(1, 0) + A0(1, 1)), 1e-13);
  const Eigen::Matrix2cd M0 = q2::mass_1d(0.0, kH);
  EXPECT_NEAR((M0(0, 0) + M0(0, 1) + M0(1, 0) + M0(1, 1)).real(), kH, 1e-16);
}

TEST(SymbolsQ2, DiagMatchesZeroModeAverage) {
  // The stencil center equals the mean of the symbol diagonal over frequency.
  const int n = 64;
  Eigen::Vector4d avg = Eigen::Vector4d::Zero();
  for (int k1 = 0; k1 < n; ++k1) {
    for (int k2 = 0; k2 < n; ++k2) {
      const Frequency t{2 * kPi * k1 / n, 2 * kPi * k2 / n};
      avg += q2::laplace(t, kH).diagonal().real();
    }
  }
  avg /= double(n * n);
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(avg(i), q2::kDiagA[i], 1e-12) << i;
}

TEST(Discretization, DispatchShapes) {
  EXPECT_EQ(system_size(Disc::PoSD), 3);
  EXPECT_EQ(system_size(Disc::Q2Q1), 9);
  EXPECT_EQ(velocity_block_size(Disc::PrSD), 1);
  EXPECT_EQ(velocity_block_size(Disc::Q2Q1), 4);
  EXPECT_NEAR(velocity_diag(Disc::PoSD)(0), 8.0 / 3.0, 1e-15);
  EXPECT_NEAR(velocity_diag(Disc::Q2Q1)(3), 512.0 / 90.0, 1e-15);
}

}  // namespace
}  // namespace bslfa
