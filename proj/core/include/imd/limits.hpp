#pragma once

// Finite-N laws of the rescaled monomer count, their candidate limits, and
// Kolmogorov-Smirnov discrepancies between the two.

#include <span>
#include <variant>
#include <vector>

#include "imd/exact.hpp"
#include "imd/phase.hpp"

namespace imd::limits {

struct Atom {
  double position;
  double probability;
};

/// Law of (S_N - N u) / N^eta, atoms sorted by increasing position.
class ScaledLaw {
 public:
  ScaledLaw(const exact::MonomerLaw& law, double eta, double u);

  int N() const { return N_; }
  const ModelParams& params() const { return params_; }
  double eta() const { return eta_; }
  double u() const { return u_; }
  std::span<const Atom> atoms() const { return atoms_; }

  double mean() const;
  double variance() const;

 private:
  int N_;
  ModelParams params_;
  double eta_;
  double u_;
  std::vector<Atom> atoms_;
};

ScaledLaw scaled_law(int N, const ModelParams& params, double eta, double u);

struct PointMass {
  double m;
};

struct Gaussian {
  double mean;
  double variance;  // > 0
};

/// Density C exp(lambda_c x^4 / 24), lambda_c < 0.
struct Quartic {
  double lambda_c;
};

struct Mixture {
  double rho1;
  double m1;
  double rho2;
  double m2;
};

using LimitLaw = std::variant<PointMass, Gaussian, Quartic, Mixture>;

/// Throws DomainError if the law's invariants fail.
void validate(const LimitLaw& law);

/// F(x) = P(X <= x).
double limit_cdf(const LimitLaw& law, double x);

/// F(x-) = P(X < x). Differs from limit_cdf only at atoms.
double limit_cdf_left(const LimitLaw& law, double x);

/// Normalized quartic density and its normalizer C^{-1} = int exp(lambda_c x^4/24) dx,
/// the latter by adaptive quadrature.
double quartic_density(const Quartic& law, double x);
double quartic_normalizer(const Quartic& law);

/// Variance of the quartic law by quadrature.
double quartic_variance(const Quartic& law);

/// sup_x |F_N(x) - F(x)|, evaluated on both sides of every jump point of
/// either distribution.
double ks_distance(const ScaledLaw& scaled, const LimitLaw& law);

struct StudyRow {
  int N;
  double ks;
  bool decreased;  // ks below the previous row (true for the first row)
};

struct ConvergenceStudy {
  std::vector<StudyRow> rows;
  int inversions;  // rows where ks failed to decrease
  bool trend_ok;   // at most one inversion
};

/// KS distance of scaled_law(N, params, eta, u) against `law` for each N.
/// N_list must be strictly increasing.
ConvergenceStudy convergence_study(const ModelParams& params, double eta, double u,
                                   const LimitLaw& law, std::span<const int> N_list);

struct BasinMasses {
  double mass1;
  double mass2;
};

/// Mass of the exact law on either side of the minimizer of tilde_p that
/// separates the two coexisting maxima.
BasinMasses coexistence_masses(int N, const phase::GammaPoint& point);

}  // namespace imd::limits
