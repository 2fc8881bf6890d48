#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace bslfa {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

/// One Fourier frequency in [-pi/2, 3pi/2)^2.
struct Frequency {
  double t1 = 0.0;
  double t2 = 0.0;
};

/// Harmonic shifts pairing a low frequency with its three aliases under
/// standard coarsening: theta + pi*(a1, a2).
inline constexpr std::array<std::array<int, 2>, 4> kHarmonics = {
    {{0, 0}, {1, 0}, {0, 1}, {1, 1}}};

inline Frequency harmonic(const Frequency& t, int k) {
  return {t.t1 + kPi * kHarmonics[k][0], t.t2 + kPi * kHarmonics[k][1]};
}

/// Uniform sampling of [-pi/2, 3pi/2): t_k = -pi/2 + 2 pi k / n.
/// These are exactly the discrete frequencies of an n x n periodic grid.
inline std::vector<double> sample_axis(int n) {
  std::vector<double> t(n);
  for (int k = 0; k < n; ++k) t[k] = -kPi / 2 + 2 * kPi * k / n;
  return t;
}

/// The low-frequency quadrant [-pi/2, pi/2)^2 of the same sampling:
/// the first n/2 points per axis.
inline std::vector<double> sample_axis_low(int n) {
  std::vector<double> t(n / 2);
  for (int k = 0; k < n / 2; ++k) t[k] = -kPi / 2 + 2 * kPi * k / n;
  return t;
}

inline bool is_zero_frequency(const Frequency& t, double tol = 1e-12) {
  return std::abs(t.t1) < tol && std::abs(t.t2) < tol;
}

}  // namespace bslfa
