#pragma once

#include <Eigen/Dense>

#include "bslfa/frequency.h"

namespace bslfa {

enum class Disc { PoSD, PrSD, Q2Q1 };

/// Stabilization weights: beta = 1/24 for the polynomial-pressure variant,
/// beta = 1 for the pressure-projection variant.
inline constexpr double kBetaPoSD = 1.0 / 24.0;

namespace q1 {

/// Bilinear Laplacian symbol; diagonal entry of the stiffness matrix is 8/3.
inline constexpr double kDiagA = 8.0 / 3.0;

double laplace(const Frequency& t);
double mass(const Frequency& t, double h);
Complex grad_x(const Frequency& t, double h);   // symbol of Bx^T
Complex grad_y(const Frequency& t, double h);   // symbol of By^T
double stab(const Frequency& t, double h, Disc disc);

/// 3x3 symbol of the saddle system [[A,0,Bx^T],[0,A,By^T],[Bx,By,-C]].
Eigen::Matrix3cd system(const Frequency& t, double h, Disc disc);

}  // namespace q1
}  // namespace bslfa
