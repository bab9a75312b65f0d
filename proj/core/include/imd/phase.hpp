#pragma once

// Phase structure of the limiting variational pressure tilde_p(m):
// stationary points of the consistency equation m = g((2m-1)J + h),
// classification of (h, J), the coexistence curve h = gamma(J) and its
// critical endpoint, and the parameters of the limiting laws.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "imd/error.hpp"
#include "imd/model.hpp"

namespace imd::phase {

// Tolerances separating the three regimes.
inline constexpr double kEqualHeightTol = 1e-11;     // coexistence: |tilde_p(m1) - tilde_p(m2)|
inline constexpr double kHeightAmbiguityTol = 1e-8;  // upper edge of the near-degenerate band
// Curvature bands apply to |tilde_p''| / 2J = |1 - 2J g'|.
inline constexpr double kCriticalCurvatureTol = 1e-8;
inline constexpr double kCurvatureAmbiguityTol = 1e-5;

enum class PointKind { Maximum, Minimum, Inflection };

struct StationaryPoint {
  double m;
  double value;             // tilde_p(m)
  double second_derivative; // lambda = tilde_p''(m)
  int order;                // first non-vanishing derivative order (2 or 4)
  PointKind kind;
};

enum class Regime { Unique, Coexistence, Critical };

std::string to_string(Regime regime);
std::string to_string(PointKind kind);

struct PhaseReport {
  Regime regime;
  std::vector<double> maximizers;  // one entry, or {m1, m2} with m1 < m2
  std::vector<StationaryPoint> stationary_points;
};

// Raised when (h, J) falls inside the band between two regimes.
class NearDegenerateError : public Error {
 public:
  NearDegenerateError(Regime first, Regime second, const std::string& what)
      : Error(what), first_(first), second_(second) {}
  Regime first() const { return first_; }
  Regime second() const { return second_; }

 private:
  Regime first_;
  Regime second_;
};

struct CriticalPoint {
  double h_c;
  double J_c;
  double m_c;
  double lambda_c;  // tilde_p''''(m_c) < 0
};

struct GammaPoint {
  double J;
  double h;
  double m1;
  double m2;
  double lambda1;
  double lambda2;
  double rho1;
  double rho2;
};

struct MixtureWeights {
  double rho1;
  double rho2;
};

/// All solutions of m = g((2m-1)J + h) in [0,1], sorted, each polished to
/// machine precision and tagged with tilde_p and its curvature.
std::vector<StationaryPoint> solve_consistency(const ModelParams& params);

/// Unique / Coexistence / Critical, or NearDegenerateError inside the bands.
PhaseReport classify(const ModelParams& params);

/// Endpoint of the coexistence curve, located by solving g''(x) = 0 and
/// 2 J g'(x) = 1 on the consistency equation.
CriticalPoint find_critical_point();

/// Fields bounding the region where tilde_p has two local maxima at coupling
/// J > J_c (the spinodals). Throws DomainError for J <= J_c.
std::pair<double, double> spinodal_fields(double J);

/// One point of the coexistence curve, with h located to ~1e-13.
GammaPoint gamma_point(double J);

/// gamma_point for every J. Throws DomainError if some J <= J_c.
std::vector<GammaPoint> trace_gamma(std::span<const double> J_values);

/// rho_l = b_l / (b1 + b2) with b_l = (-lambda_l (2 - m_l))^{-1/2}.
MixtureWeights weights_from_curvature(double m1, double lambda1, double m2, double lambda2);

/// Mixture weights for a point validated to lie on the coexistence curve.
MixtureWeights mixture_weights(const GammaPoint& point);

/// rho1 / rho2 from the closed form
/// sqrt(((2-m2) - 4J m2 (1-m2)) / ((2-m1) - 4J m1 (1-m1))).
double mixture_ratio_closed_form(const GammaPoint& point);

/// CLT variance -1/lambda - 1/(2J) at the unique maximizer (g'(h) for J = 0).
/// Throws DomainError on the coexistence curve or at the critical point.
double clt_variance(const ModelParams& params);

/// Reduced form g'(x*) / (1 - 2J g'(x*)), x* = (2m*-1)J + h.
double clt_variance_reduced(const ModelParams& params);

}  // namespace imd::phase
