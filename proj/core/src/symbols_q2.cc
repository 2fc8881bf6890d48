#include "bslfa/symbols_q2.h"

#include <cmath>

namespace bslfa::q2 {

Eigen::Matrix2cd stiffness_1d(double theta, double h) {
  Eigen::Matrix2cd a;
  const double c = std::cos(theta), ch = std::cos(theta / 2);
  a << 14.0 + 2.0 * c, -16.0 * ch,
       -16.0 * ch, 16.0;
  return a / (3.0 * h);
}

Eigen::Matrix2cd mass_1d(double theta, double h) {
  Eigen::Matrix2cd m;
  const double c = std::cos(theta), ch = std::cos(theta / 2);
  m << 8.0 - 2.0 * c, 4.0 * ch,
       4.0 * ch, 16.0;
  return m * (h / 30.0);
}

namespace {

Eigen::Matrix4cd kron2(const Eigen::Matrix2cd& y, const Eigen::Matrix2cd& x) {
  Eigen::Matrix4cd k;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      k.block<2, 2>(2 * i, 2 * j) = y(i, j) * x;
  return k;
}

}  // namespace

Eigen::Matrix4cd laplace(const Frequency& t, double h) {
  return kron2(stiffness_1d(t.t2, h), mass_1d(t.t1, h)) +
         kron2(mass_1d(t.t2, h), stiffness_1d(t.t1, h));
}

Eigen::Vector4cd grad_x(const Frequency& t, double h) {
  const Complex i(0.0, 1.0);
  const double s1 = std::sin(t.t1), s1h = std::sin(t.t1 / 2);
  const double c2h = std::cos(t.t2 / 2);
  Eigen::Vector4cd b;
  b << i * h / 9.0 * s1,
       i * 4.0 * h / 9.0 * s1h,
       i * 2.0 * h / 9.0 * s1 * c2h,
       i * 8.0 * h / 9.0 * s1h * c2h;
  return b;
}

Eigen::Vector4cd grad_y(const Frequency& t, double h) {
  const Frequency s{t.t2, t.t1};
  const Eigen::Vector4cd bx = grad_x(s, h);
  // Swapping coordinates exchanges the roles of the two edge sub-grids.
  Eigen::Vector4cd b;
  b << bx(0), bx(2), bx(1), bx(3);
  return b;
}

Eigen::MatrixXcd system(const Frequency& t, double h) {
  Eigen::MatrixXcd L = Eigen::MatrixXcd::Zero(9, 9);
  const Eigen::Matrix4cd A = laplace(t, h);
  const Eigen::Vector4cd bx = grad_x(t, h), by = grad_y(t, h);
  L.block<4, 4>(0, 0) = A;
  L.block<4, 4>(4, 4) = A;
  L.block<4, 1>(0, 8) = bx;
  L.block<4, 1>(4, 8) = by;
  L.block<1, 4>(8, 0) = bx.adjoint();
  L.block<1, 4>(8, 4) = by.adjoint();
  return L;
}

}  // namespace bslfa::q2
