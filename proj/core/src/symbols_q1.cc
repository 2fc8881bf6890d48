#include "bslfa/symbols_q1.h"

#include <cmath>
#include <stdexcept>

namespace bslfa::q1 {

double laplace(const Frequency& t) {
  const double c1 = std::cos(t.t1), c2 = std::cos(t.t2);
  return (2.0 / 3.0) * (4.0 - c1 - c2 - 2.0 * c1 * c2);
}

double mass(const Frequency& t, double h) {
  const double c1 = std::cos(t.t1), c2 = std::cos(t.t2);
  return h * h / 9.0 * (4.0 + 2.0 * c1 + 2.0 * c2 + c1 * c2);
}

Complex grad_x(const Frequency& t, double h) {
  return Complex(0.0, h / 3.0) * std::sin(t.t1) * (2.0 + std::cos(t.t2));
}

Complex grad_y(const Frequency& t, double h) {
  return Complex(0.0, h / 3.0) * (2.0 + std::cos(t.t1)) * std::sin(t.t2);
}

double stab(const Frequency& t, double h, Disc disc) {
  switch (disc) {
    case Disc::PoSD:
      return kBetaPoSD * laplace(t) * h * h;
    case Disc::PrSD: {
      // Q1 mass minus the piecewise-constant projection term.
      const double c1 = std::cos(t.t1), c2 = std::cos(t.t2);
      const double m = (4.0 + 2.0 * c1 + 2.0 * c2 + c1 * c2) / 9.0;
      const double proj = (1.0 + c1) * (1.0 + c2) / 4.0;
      return (m - proj) * h * h;
    }
    case Disc::Q2Q1:
      return 0.0;
  }
  throw std::invalid_argument("stab: bad discretization");
}

Eigen::Matrix3cd system(const Frequency& t, double h, Disc disc) {
  const double a = laplace(t);
  const Complex b1 = grad_x(t, h), b2 = grad_y(t, h);
  const double c = stab(t, h, disc);
  Eigen::Matrix3cd L;
  L << a, 0.0, b1,
       0.0, a, b2,
       -b1, -b2, -c;
  return L;
}

}  // namespace bslfa::q1
