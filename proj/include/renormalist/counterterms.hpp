#pragma once

#include <functional>
#include <string>
#include <vector>

#include "renormalist/rational.hpp"

namespace renormalist {

struct QuadratureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Smooth cutoff: 1 on [0,1), 0 outside [0,2], exp-bump transition on [1,2].
double kappa_cut(double t);
// Normalised even bump exp(-1/(1-t^2)) on (-1,1).
double phi_bump(double t);
// (phi^eps * phi^eps)(w) with phi^eps(x) = eps^-2 phi(x/eps^2); argument in
// units of eps^2, i.e. psi_scaled(y) = eps^2 * psi_eps(eps^2 y).
double psi_scaled(double y);

// Truncated Euclidean heat kernel (4 pi t)^{-d/2} e^{-r2/(4t)} kappa(t).
double zbar(double t, double r2, int d);

struct QuadratureConfig {
  int panels = 9;    // geometric panels per singular axis
  int gauss = 4;     // Gauss-Legendre points per panel
  int panels4 = 8;   // panels for the four-axis graph integrals
  int gauss4 = 3;    // Gauss points for the four-axis graph integrals
  int smear = 5;     // points across a mollifier support
  double rbar = 1.0; // spatial truncation radius
};

struct ConstantValue {
  double value = 0;
  double error = 0;  // |fine - coarse| self-consistency estimate
};

struct PamConstants {
  ConstantValue c, cp;
};
struct Phi4Constants {
  ConstantValue c, cp;
};
struct Phi34Constants {
  ConstantValue c21, c22, c211, c22j, c11;  // declared tuple order
};

PamConstants pam_constants(double eps, const QuadratureConfig& cfg = {});
Phi4Constants phi4_constants(double eps, const QuadratureConfig& cfg = {});
Phi34Constants phi34_constants(double eps, const QuadratureConfig& cfg = {});

// Single-resolution evaluations (used for the self-consistency estimates).
double pam_c_raw(double eps, const QuadratureConfig& cfg);
double pam_cp_raw(double eps, const QuadratureConfig& cfg);
double phi4_c_raw(double eps, const QuadratureConfig& cfg);
double phi4_cp_raw(double eps, const QuadratureConfig& cfg);
double phi34_c21_raw(double eps, const QuadratureConfig& cfg);
double phi34_c22_raw(double eps, const QuadratureConfig& cfg);
double phi34_c11_raw(double eps, const QuadratureConfig& cfg);
double phi34_c211_raw(double eps, const QuadratureConfig& cfg);
double phi34_c22j_raw(double eps, const QuadratureConfig& cfg);

struct FitResult {
  enum class Model { Power, Log } model = Model::Log;
  double a = 0, b = 0, p = 0;
  double residual = 0;  // relative RMS
};
// Least squares of a*eps^-p + b and a*log(1/eps) + b; picks the smaller
// relative residual. Needs >= 4 samples.
FitResult fit_divergence(const std::vector<std::pair<double, double>>& samples);

// Parabolic power counting for a diagram: degree = |s| * #vertices - sum of
// kernel singularity orders; degree 0 predicts a log divergence, degree -p<0
// the rate eps^-p (positive degree: convergent, fitted as a power with p<=0).
Rational power_counting_degree(const std::vector<Rational>& kernel_orders, const Rational& s_norm,
                               int integrated_vertices);

// Oracle degrees for the nine shipped diagrams, keyed by constant name.
Rational divergence_oracle(const std::string& constant);

struct DyadicBand {
  int n = 0;
  double ratio = 0;     // sup |K_n| 2^{-n(|s|-beta)}
  double ratio_dx = 0;  // sup |dK_n/dx| 2^{-n(|s|-beta+1)}
  double ratio_dt = 0;  // sup |dK_n/dt| 2^{-n(|s|-beta+2)}
};
struct DyadicReport {
  std::vector<DyadicBand> bands;
  double slope = 0;  // log2 growth rate of ratio over the upper bands
  bool flagged = false;
};
// Numeric check of the dyadic decomposition K_n = K (chi(2^n d) - chi(2^{n+1} d))
// against the |K_n| <~ 2^{n(|s|-beta)} bounds; report only.
DyadicReport dyadic_decompose(const std::function<double(double, double)>& kernel_tx,
                              double s_norm, double beta, int nmax = 12, int grid = 24);

// Parallel map over an epsilon grid honoring RENORMALIST_THREADS; results in
// input order regardless of scheduling.
std::vector<double> sweep_epsilons(const std::vector<double>& eps,
                                   const std::function<double(double)>& fn);

}  // namespace renormalist
