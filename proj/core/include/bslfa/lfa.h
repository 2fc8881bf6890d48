#pragma once

#include <Eigen/Dense>
#include <string>
#include <utility>
#include <vector>

#include "bslfa/relaxation.h"

namespace bslfa {

enum class Coarsening { Rediscretize, Galerkin };

struct TGSpec {
  int nu1 = 1;
  int nu2 = 1;
  Coarsening coarsening = Coarsening::Rediscretize;
  int samples = 128;  // frequencies per dimension, multiple of 4
};

struct AnalysisResult {
  double factor = 0.0;
  Frequency argmax;
  bool ok = true;
  std::string message;
};

/// Scalar bilinear interpolation symbol cos^2(t1/2) cos^2(t2/2).
double interp_symbol_q1(const Frequency& t);

/// Biquadratic interpolation symbol for one harmonic: 4x4 over sub-grid
/// types, as a function of the base frequency and the harmonic shift.
Eigen::Matrix4cd interp_symbol_q2(const Frequency& base, int a1, int a2);

/// Adjoint restriction symbol for the same harmonic.
Eigen::Matrix4cd restrict_symbol_q2(const Frequency& base, int a1, int a2);

/// Smoothing factor: max spectral radius of the error symbol over the
/// high-frequency range.
AnalysisResult smoothing_factor(const RelaxScheme& s, Disc disc, double h,
                                int samples = 128);

/// Four-harmonic two-grid error symbol at one low frequency.
Eigen::MatrixXcd two_grid_symbol(const RelaxScheme& s, Disc disc,
                                 const Frequency& t, double h,
                                 const TGSpec& tg);

/// Two-grid convergence factor over the sampled low-frequency quadrant.
AnalysisResult two_grid_factor(const RelaxScheme& s, Disc disc, double h,
                               const TGSpec& tg);

/// All two-grid eigenvalues, one row per sampled frequency.
struct SpectrumRow {
  Frequency t;
  std::vector<Complex> eigs;
};
std::vector<SpectrumRow> two_grid_spectrum(const RelaxScheme& s, Disc disc,
                                           double h, const TGSpec& tg);

enum class Objective { Smoothing, TwoGrid };

struct ParamAxis {
  std::string name;  // alpha, alpha1, alpha2, omega, omegaJ, delta, sigma
  double lo = 0.0;
  double hi = 0.0;
  double step = 0.0;  // nonpositive step collapses the axis to lo
};

std::vector<double> axis_values(const ParamAxis& axis);

/// Applies a named parameter value; throws on an unknown name.
void set_param(SchemeParams& p, const std::string& name, double value);

struct OptimizeResult {
  double factor = 0.0;
  std::vector<std::pair<std::string, double>> params;
  bool ok = true;
};

/// Exhaustive search over the parameter grid; ties keep the
/// lexicographically smallest parameter tuple.
OptimizeResult optimize_params(RelaxScheme s, Disc disc, double h,
                               Objective objective, const TGSpec& tg,
                               const std::vector<ParamAxis>& axes);

/// Dense grid of factors over two parameter axes.
Eigen::MatrixXd parameter_sweep(RelaxScheme s, Disc disc, double h,
                                const TGSpec& tg, const ParamAxis& axis1,
                                const ParamAxis& axis2);

}  // namespace bslfa
