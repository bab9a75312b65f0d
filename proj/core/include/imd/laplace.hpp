#pragma once

// Integrals of the form  int psi_n(x)^n dx  for n-dependent integrands:
// log-scale quadrature, the Laplace asymptote, and the Gaussian
// representation of the hard-core partition function
//
//   Z0_N(h) = sqrt(N / 2pi) int ((x + e^h) e^{-x^2/2})^N dx.

#include <functional>

#include "imd/model.hpp"

namespace imd::laplace {

/// A sequence psi_n described through log|psi_n| and sign(psi_n). `window` is
/// a compact interval on which psi_n > 0 and which contains the maximizer.
/// The derivatives of log|psi_n| are optional; finite differences are used
/// when they are missing.
struct IntegrandFamily {
  std::function<double(int n, double x)> log_abs;
  std::function<int(int n, double x)> sign;
  double window_lo = 0.0;
  double window_hi = 0.0;
  std::function<double(int n, double x)> d1_log_abs;
  std::function<double(int n, double x)> d2_log_abs;
};

struct QuadratureResult {
  double log_abs_value;      // log |int psi_n^n|
  int sign;                  // sign of the integral
  double relative_error;     // estimate
  bool precision_warning;    // signed cancellation destroyed relative accuracy
};

/// Adaptive Gauss-Kronrod quadrature of psi_n^n on a shifted-log scale.
/// Throws IntegrationError when the tails do not decay.
QuadratureResult integrate_power(const IntegrandFamily& family, int n);

/// log int psi_n^n dx; requires a positive integral.
double quad_log_integral(const IntegrandFamily& family, int n);

/// psi_n(x) = (x + exp(u + t / n^eta)) exp(-x^2 / 2).
IntegrandFamily psi_family(double u, double t = 0.0, double eta = 0.0);

/// psi(x) = exp(-x^2 / 2), for which the Laplace asymptote is exact.
IntegrandFamily gaussian_family();

/// log Z0_N(h) through the Gaussian representation and quadrature.
double gaussian_rep_logZ(int N, double h);

struct LaplaceResult {
  double log_integral_quadrature;
  double log_asymptote;       // n f_n(x_n) + log sqrt(2 pi / (-n f''))
  double maximizer;           // x_n
  double second_derivative;   // f_n''(x_n) < 0
  double log_ratio() const { return log_integral_quadrature - log_asymptote; }
};

/// Quadrature and Laplace asymptote for one n. Throws HypothesisError when the
/// maximizer sits on the window boundary or f'' is not below -1e-10 there.
LaplaceResult laplace_approx(const IntegrandFamily& family, int n);

/// R_N = exp(log Z0_N(v) - N p0(v)) sqrt(2 - g(u)), v = u + t / N^eta.
/// Tends to 1 as N grows.
double asympzeta_ratio(int N, double u, double t, double eta);

/// exp(N (F_N(y) - tilde_p(y))) with F_N(y) = -J y^2 + p0_N(2Jy + h - J).
double free_energy_correction(int N, const ModelParams& params, double y);

/// Its limit (2 - g(2Jy + h - J))^{-1/2}.
double free_energy_correction_limit(const ModelParams& params, double y);

}  // namespace imd::laplace
