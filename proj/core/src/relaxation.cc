#include "bslfa/relaxation.h"

#include <cmath>
#include <stdexcept>

namespace bslfa {

std::string to_string(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::DWJ1: return "dwj1";
    case SchemeKind::DWJ2: return "dwj2";
    case SchemeKind::BSRExact: return "bsr";
    case SchemeKind::IBSR: return "ibsr";
    case SchemeKind::UzawaSchur: return "uzawa-schur";
    case SchemeKind::UzawaMass: return "uzawa-mass";
    case SchemeKind::UzawaDiag: return "uzawa-diag";
  }
  return "?";
}

double schur_diag_over_h2(Disc disc, double alpha) {
  switch (disc) {
    case Disc::PoSD: return 3.0 / (16.0 * alpha) + 1.0 / 9.0;
    case Disc::PrSD: return 3.0 / (16.0 * alpha) + 7.0 / 36.0;
    case Disc::Q2Q1: return (485.0 / 3696.0) / alpha;
  }
  throw std::invalid_argument("schur_diag_over_h2: bad discretization");
}

double schur_symbol(Disc disc, const Frequency& t, double h, double alpha) {
  const Eigen::VectorXcd bx = grad_x_symbol(disc, t, h);
  const Eigen::VectorXcd by = grad_y_symbol(disc, t, h);
  const Eigen::VectorXd d = alpha * velocity_diag(disc);
  double s = stab_symbol(disc, t, h);
  for (int i = 0; i < bx.size(); ++i)
    s += (std::norm(bx(i)) + std::norm(by(i))) / d(i);
  return s;
}

double uzawa_sigma(Disc disc, const SchemeParams& p) {
  if (p.sigma >= 0.0) return p.sigma;
  return schur_diag_over_h2(disc, p.alpha);
}

namespace {

struct Blocks {
  int nv, n;
  Eigen::MatrixXcd L;
  Eigen::VectorXcd bx, by;
  Eigen::VectorXd diag;
  double c;
};

Blocks system_blocks(Disc disc, const Frequency& t, double h) {
  Blocks b;
  b.nv = velocity_block_size(disc);
  b.n = 2 * b.nv + 1;
  b.L = system_symbol(disc, t, h);
  b.bx = grad_x_symbol(disc, t, h);
  b.by = grad_y_symbol(disc, t, h);
  b.diag = velocity_diag(disc);
  b.c = stab_symbol(disc, t, h);
  return b;
}

/// y2 = (|b1|^2 + |b2|^2 + a c) / h^2, the distributed pressure symbol.
double y2_value(Disc disc, const Frequency& t, double h) {
  const Complex b1 = q1::grad_x(t, h), b2 = q1::grad_y(t, h);
  const double a = q1::laplace(t);
  const double c = q1::stab(t, h, disc);
  return (std::norm(b1) + std::norm(b2) + a * c) / (h * h);
}

double dwj_pressure_entry(const RelaxScheme& s, Disc disc, const Frequency& t,
                          double h) {
  if (s.kind == SchemeKind::DWJ1) return h * h * s.p.alpha2;
  const double y2 = y2_value(disc, t, h);
  const double wj = s.p.omegaJ;
  return h * h / (2.0 * wj - wj * wj * y2);
}

Eigen::MatrixXcd dwj_symbol(const RelaxScheme& s, Disc disc,
                            const Frequency& t, double h) {
  const Blocks b = system_blocks(disc, t, h);
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(b.n, b.n);
  for (int i = 0; i < b.nv; ++i) {
    M(i, i) = s.p.alpha1 * b.diag(i);
    M(b.nv + i, b.nv + i) = s.p.alpha1 * b.diag(i);
  }
  M.block(b.n - 1, 0, 1, b.nv) = b.bx.adjoint();
  M.block(b.n - 1, b.nv, 1, b.nv) = b.by.adjoint();
  M(b.n - 1, b.n - 1) = dwj_pressure_entry(s, disc, t, h);

  Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(b.n, b.n);
  P.block(0, b.n - 1, b.nv, 1) = b.bx;
  P.block(b.nv, b.n - 1, b.nv, 1) = b.by;
  P(b.n - 1, b.n - 1) = -q1::laplace(t);

  return Eigen::MatrixXcd::Identity(b.n, b.n) -
         s.p.omega * (P * M.partialPivLu().solve(b.L));
}

double ibsr_eta(const RelaxScheme& s, Disc disc, const Frequency& t, double h) {
  const double tau = schur_symbol(disc, t, h, s.p.alpha);
  const double c = stab_symbol(disc, t, h);
  const double varsigma = tau - c;
  const double ds = schur_diag_over_h2(disc, s.p.alpha) * h * h;
  const double r = 1.0 - std::pow(1.0 - s.p.omegaJ * tau / ds, s.p.sweeps);
  return varsigma - tau / r;
}

Eigen::MatrixXcd saddle_symbol(const RelaxScheme& s, Disc disc,
                               const Frequency& t, double h) {
  const Blocks b = system_blocks(disc, t, h);
  Eigen::MatrixXcd M;
  const bool uzawa = s.kind == SchemeKind::UzawaSchur ||
                     s.kind == SchemeKind::UzawaMass ||
                     s.kind == SchemeKind::UzawaDiag;
  if (uzawa) {
    M = Eigen::MatrixXcd::Zero(b.n, b.n);
    M.block(b.n - 1, 0, 1, b.nv) = b.bx.adjoint();
    M.block(b.n - 1, b.nv, 1, b.nv) = b.by.adjoint();
  } else {
    M = b.L;
    M.block(0, 0, b.nv, b.nv).setZero();
    M.block(b.nv, b.nv, b.nv, b.nv).setZero();
  }
  for (int i = 0; i < b.nv; ++i) {
    M(i, i) = s.p.alpha * b.diag(i);
    M(b.nv + i, b.nv + i) = s.p.alpha * b.diag(i);
  }
  switch (s.kind) {
    case SchemeKind::BSRExact:
      break;
    case SchemeKind::IBSR:
      // eta tends to -c as the inner sweeps converge, recovering exact BSR.
      M(b.n - 1, b.n - 1) = ibsr_eta(s, disc, t, h);
      break;
    case SchemeKind::UzawaSchur:
      M(b.n - 1, b.n - 1) = -schur_symbol(disc, t, h, s.p.alpha);
      break;
    case SchemeKind::UzawaMass:
      M(b.n - 1, b.n - 1) = -(b.c + s.p.delta * q1::mass(t, h));
      break;
    case SchemeKind::UzawaDiag:
      M(b.n - 1, b.n - 1) = -uzawa_sigma(disc, s.p) * h * h;
      break;
    default:
      throw std::invalid_argument("saddle_symbol: bad scheme");
  }
  return Eigen::MatrixXcd::Identity(b.n, b.n) -
         s.p.omega * M.partialPivLu().solve(b.L);
}

}  // namespace

Eigen::MatrixXcd error_symbol(const RelaxScheme& s, Disc disc,
                              const Frequency& t, double h) {
  switch (s.kind) {
    case SchemeKind::DWJ1:
    case SchemeKind::DWJ2:
      if (s.kind == SchemeKind::DWJ2 && disc == Disc::Q2Q1)
        throw std::invalid_argument("dwj2 requires an equal-order discretization");
      return dwj_symbol(s, disc, t, h);
    default:
      return saddle_symbol(s, disc, t, h);
  }
}

std::vector<Complex> closed_form_eigs(const RelaxScheme& s, Disc disc,
                                      const Frequency& t, double h) {
  if (disc == Disc::Q2Q1)
    throw std::invalid_argument("closed forms cover equal-order discretizations only");
  const double a = q1::laplace(t);
  const Complex b1 = q1::grad_x(t, h), b2 = q1::grad_y(t, h);
  const double c = q1::stab(t, h, disc);
  const double b = std::norm(b1) + std::norm(b2);
  const double w = s.p.omega;
  switch (s.kind) {
    case SchemeKind::DWJ1: {
      const double y1 = 3.0 * a / 8.0;
      const double y2 = y2_value(disc, t, h);
      const Complex lv = 1.0 - w * y1 / s.p.alpha1;
      return {lv, lv, 1.0 - w * y2 / s.p.alpha2};
    }
    case SchemeKind::DWJ2: {
      const double y1 = 3.0 * a / 8.0;
      const double y2 = y2_value(disc, t, h);
      const double y3 = s.p.omegaJ * y2 * (2.0 - s.p.omegaJ * y2);
      const Complex lv = 1.0 - w * y1 / s.p.alpha1;
      return {lv, lv, 1.0 - w * y3};
    }
    case SchemeKind::BSRExact: {
      const double l2 = 3.0 * a / (8.0 * s.p.alpha);
      const double l3 = (a * c + b) / (8.0 / 3.0 * s.p.alpha * c + b);
      return {1.0 - w, 1.0 - w * l2, 1.0 - w * l3};
    }
    case SchemeKind::IBSR: {
      // det(L - lambda M) factors into the velocity root and a quadratic.
      const double eta = ibsr_eta(s, disc, t, h);
      const double al = s.p.alpha;
      const Complex qa = b - 8.0 * al * eta / 3.0;
      const Complex qb = a * eta - 8.0 / 3.0 * al * c - 2.0 * b;
      const Complex qc = a * c + b;
      const Complex discr = std::sqrt(qb * qb - 4.0 * qa * qc);
      const Complex r1 = (-qb + discr) / (2.0 * qa);
      const Complex r2 = (-qb - discr) / (2.0 * qa);
      return {1.0 - w * 3.0 * a / (8.0 * al), 1.0 - w * r1, 1.0 - w * r2};
    }
    default:
      throw std::invalid_argument("no closed form for this scheme");
  }
}

}  // namespace bslfa
