#pragma once

#include <Eigen/Dense>

#include "bslfa/frequency.h"

namespace bslfa::q2 {

/// Velocity sub-grid types in fixed order: node, x-edge, y-edge, cell.
/// Offsets are in half-mesh units relative to the element corner.
inline constexpr int kNode = 0, kEdgeX = 1, kEdgeY = 2, kCell = 3;
inline constexpr std::array<std::array<int, 2>, 4> kOffsets = {
    {{0, 0}, {1, 0}, {0, 1}, {1, 1}}};

/// Diagonal of the biquadratic vector-Laplacian blocks, per sub-grid type.
inline constexpr std::array<double, 4> kDiagA = {
    224.0 / 90.0, 352.0 / 90.0, 352.0 / 90.0, 512.0 / 90.0};

Eigen::Matrix2cd stiffness_1d(double theta, double h);
Eigen::Matrix2cd mass_1d(double theta, double h);

/// 2D biquadratic Laplacian: A(t2) x M(t1) + M(t2) x A(t1), with the
/// Kronecker index (y_type, x_type) matching the sub-grid order above.
Eigen::Matrix4cd laplace(const Frequency& t, double h);

Eigen::Vector4cd grad_x(const Frequency& t, double h);  // symbol of Bx^T
Eigen::Vector4cd grad_y(const Frequency& t, double h);  // symbol of By^T

/// 9x9 saddle system symbol; pressure is bilinear on the node sub-grid.
Eigen::MatrixXcd system(const Frequency& t, double h);

}  // namespace bslfa::q2
