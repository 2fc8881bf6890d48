#pragma once

#include <Eigen/Dense>

#include "bslfa/frequency.h"
#include "bslfa/symbols_q1.h"
#include "bslfa/symbols_q2.h"

namespace bslfa {

/// Scalar fields per discretization: 2 velocity components and pressure,
/// with the biquadratic velocity split into 4 sub-grid types.
inline int system_size(Disc disc) { return disc == Disc::Q2Q1 ? 9 : 3; }

inline int velocity_block_size(Disc disc) { return disc == Disc::Q2Q1 ? 4 : 1; }

inline Eigen::MatrixXcd system_symbol(Disc disc, const Frequency& t, double h) {
  if (disc == Disc::Q2Q1) return q2::system(t, h);
  return q1::system(t, h, disc);
}

/// Diagonal of one velocity-component block of the stiffness matrix.
inline Eigen::VectorXd velocity_diag(Disc disc) {
  if (disc == Disc::Q2Q1) {
    Eigen::VectorXd d(4);
    d << q2::kDiagA[0], q2::kDiagA[1], q2::kDiagA[2], q2::kDiagA[3];
    return d;
  }
  Eigen::VectorXd d(1);
  d << q1::kDiagA;
  return d;
}

/// Symbol of the gradient block Bx^T (velocity rows, pressure column).
inline Eigen::VectorXcd grad_x_symbol(Disc disc, const Frequency& t, double h) {
  if (disc == Disc::Q2Q1) return q2::grad_x(t, h);
  Eigen::VectorXcd b(1);
  b << q1::grad_x(t, h);
  return b;
}

inline Eigen::VectorXcd grad_y_symbol(Disc disc, const Frequency& t, double h) {
  if (disc == Disc::Q2Q1) return q2::grad_y(t, h);
  Eigen::VectorXcd b(1);
  b << q1::grad_y(t, h);
  return b;
}

inline double stab_symbol(Disc disc, const Frequency& t, double h) {
  if (disc == Disc::Q2Q1) return 0.0;
  return q1::stab(t, h, disc);
}

}  // namespace bslfa
