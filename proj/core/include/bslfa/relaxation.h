#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "bslfa/discretization.h"
#include "bslfa/frequency.h"

namespace bslfa {

enum class SchemeKind { DWJ1, DWJ2, BSRExact, IBSR, UzawaSchur, UzawaMass, UzawaDiag };

struct SchemeParams {
  double alpha = 1.0;    // scaling of diag(A) in the saddle approximations
  double alpha1 = 1.0;   // distributive Jacobi: velocity scaling
  double alpha2 = 1.0;   // distributive Jacobi: pressure scaling
  double omega = 1.0;    // weight of the full update
  double omegaJ = 1.0;   // weight of inner Jacobi sweeps
  double delta = 1.0;    // mass weight in the Uzawa mass approximation
  double sigma = -1.0;   // Uzawa diagonal scale; negative requests the
                         // single-Jacobi-sweep value diag(S)/h^2
  int sweeps = 1;        // Jacobi sweeps on the approximate Schur system
  int inner_cycles = 0;  // nested W(1,1) cycles on that system (solver side)
};

struct RelaxScheme {
  SchemeKind kind = SchemeKind::BSRExact;
  SchemeParams p;
};

std::string to_string(SchemeKind kind);

/// Diagonal entry of the approximate Schur complement diag(C + B (a D)^-1 B^T),
/// as a multiple of h^2.
double schur_diag_over_h2(Disc disc, double alpha);

/// Symbol of the approximate Schur complement C + B (alpha D)^-1 B^T.
double schur_symbol(Disc disc, const Frequency& t, double h, double alpha);

/// Effective Uzawa diagonal scale: explicit sigma, or diag(S)/h^2 when unset.
double uzawa_sigma(Disc disc, const SchemeParams& p);

/// Error-propagation symbol S(theta) of one relaxation sweep.
Eigen::MatrixXcd error_symbol(const RelaxScheme& s, Disc disc,
                              const Frequency& t, double h);

/// Closed-form eigenvalues of the error symbol, where the scheme admits them
/// (equal-order discretizations only).
std::vector<Complex> closed_form_eigs(const RelaxScheme& s, Disc disc,
                                      const Frequency& t, double h);

/// Smoothing-optimal reference factors.
inline constexpr double kOptVelocityJacobi = 1.0 / 3.0;  // at omega/alpha1 = 8/9
inline constexpr double kOptDWJ1PoSD = 55.0 / 89.0;      // at omega/alpha2 = 459/356
inline constexpr double kOptDWJ1PrSD = 65.0 / 97.0;      // at omega/alpha2 = 108/97
inline constexpr double kOptDWJ2 = 1.0 / 3.0;
inline constexpr double kOptBSR = 1.0 / 3.0;             // at omega/alpha = 8/9

}  // namespace bslfa
