#include "imd/laplace.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/minima.hpp>

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "imd/error.hpp"
#include "imd/exact.hpp"
#include "imd/thermo.hpp"

namespace imd::laplace {
namespace {

constexpr double kTailLogThreshold = -75.0;  // ~1e-33 relative to the peak
constexpr int kMaxProbes = 2000;
// |f''| below this at the maximizer counts as a degenerate (flat) peak.
constexpr double kMinCurvature = 1e-10;

double fd_step(double x) { return 1e-5 * (1.0 + std::abs(x)); }

double first_derivative(const IntegrandFamily& fam, int n, double x) {
  if (fam.d1_log_abs) return fam.d1_log_abs(n, x);
  const double s = fd_step(x);
  return (fam.log_abs(n, x + s) - fam.log_abs(n, x - s)) / (2.0 * s);
}

double second_derivative(const IntegrandFamily& fam, int n, double x) {
  if (fam.d2_log_abs) return fam.d2_log_abs(n, x);
  const double s = 1e2 * fd_step(x);
  return (fam.log_abs(n, x + s) - 2.0 * fam.log_abs(n, x) + fam.log_abs(n, x - s)) / (s * s);
}

void require_family(const IntegrandFamily& fam) {
  if (!fam.log_abs || !fam.sign) throw DomainError("integrand family needs log_abs and sign");
  if (!(fam.window_lo < fam.window_hi)) throw DomainError("integrand window must be non-empty");
}

// Maximizer of log|psi_n| on the window: golden-section/Brent search, then
// Newton steps on the derivative.
double locate_maximizer(const IntegrandFamily& fam, int n) {
  const auto [x0, neg] = boost::math::tools::brent_find_minima(
      [&](double x) { return -fam.log_abs(n, x); }, fam.window_lo, fam.window_hi,
      std::numeric_limits<double>::digits / 2);
  (void)neg;
  double x = x0;
  double last_step = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 30; ++it) {
    const double d2 = second_derivative(fam, n, x);
    if (!(d2 < 0.0)) break;
    const double step = -first_derivative(fam, n, x) / d2;
    const double cand = x + step;
    if (!(std::abs(step) < last_step) || cand <= fam.window_lo || cand >= fam.window_hi) break;
    x = cand;
    last_step = std::abs(step);
    if (last_step == 0.0) break;
  }
  return x;
}

int power_sign(int sign, int n) { return (sign < 0 && n % 2 != 0) ? -1 : (sign == 0 ? 0 : 1); }

}  // namespace

QuadratureResult integrate_power(const IntegrandFamily& family, int n) {
  require_family(family);
  if (n < 1) throw DomainError("integrate_power: n must be >= 1");

  const double peak = locate_maximizer(family, n);
  const double shift = n * family.log_abs(n, peak);
  if (!std::isfinite(shift)) throw IntegrationError("integrate_power: non-finite peak value");

  const double curvature = second_derivative(family, n, peak);
  double width = curvature < 0.0 ? 1.0 / std::sqrt(-n * curvature)
                                 : 0.1 * (family.window_hi - family.window_lo);
  if (!(width > 0.0) || !std::isfinite(width)) width = 1e-3;

  auto integrand = [&](double x) {
    const double la = family.log_abs(n, x);
    if (la == -std::numeric_limits<double>::infinity()) return 0.0;
    return power_sign(family.sign(n, x), n) * std::exp(n * la - shift);
  };

  // Tail probes double as panel breakpoints: walk outward with geometrically
  // growing steps until the integrand is negligible and still decreasing.
  auto probe = [&](double direction) {
    std::vector<double> pts;
    double x = peak;
    double step = width;
    double prev = family.log_abs(n, x);
    int quiet = 0;
    for (int i = 0; i < kMaxProbes; ++i) {
      x += direction * step;
      step *= 1.2;
      pts.push_back(x);
      const double la = family.log_abs(n, x);
      const bool negligible = !(n * la - shift > kTailLogThreshold);
      const bool decreasing = la < prev;
      prev = la;
      quiet = (negligible && decreasing) ? quiet + 1 : 0;
      if (quiet >= 3) return pts;
      if (std::abs(x - peak) > 1e6) break;
    }
    throw IntegrationError("integrate_power: integrand tails do not decay (n = " +
                           std::to_string(n) + ")");
  };

  std::vector<double> breaks;
  auto left = probe(-1.0);
  for (auto it = left.rbegin(); it != left.rend(); ++it) breaks.push_back(*it);
  breaks.push_back(peak);
  for (double x : probe(1.0)) breaks.push_back(x);

  using Quad = boost::math::quadrature::gauss_kronrod<double, 31>;
  double total = 0.0;
  double l1 = 0.0;
  double err = 0.0;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
    double panel_err = 0.0;
    double panel_l1 = 0.0;
    total += Quad::integrate(integrand, breaks[i], breaks[i + 1], 10, 1e-13, &panel_err, &panel_l1);
    err += panel_err;
    l1 += panel_l1;
  }
  if (total == 0.0 || !std::isfinite(total)) {
    throw IntegrationError("integrate_power: integral vanished or is not finite");
  }
  QuadratureResult res;
  res.log_abs_value = shift + std::log(std::abs(total));
  res.sign = total > 0.0 ? 1 : -1;
  res.relative_error = err / std::abs(total);
  res.precision_warning = std::abs(total) < 1e-8 * l1;
  return res;
}

double quad_log_integral(const IntegrandFamily& family, int n) {
  const QuadratureResult r = integrate_power(family, n);
  if (r.sign <= 0) throw IntegrationError("quad_log_integral: integral is not positive");
  return r.log_abs_value;
}

IntegrandFamily psi_family(double u, double t, double eta) {
  if (!std::isfinite(u) || !std::isfinite(t) || !(eta >= 0.0)) {
    throw DomainError("psi_family: u, t must be finite and eta >= 0");
  }
  auto shift = [=](int n) { return std::exp(u + t * std::pow(static_cast<double>(n), -eta)); };
  IntegrandFamily fam;
  fam.log_abs = [=](int n, double x) {
    return std::log(std::abs(x + shift(n))) - 0.5 * x * x;
  };
  fam.sign = [=](int n, double x) {
    const double v = x + shift(n);
    return v > 0.0 ? 1 : (v < 0.0 ? -1 : 0);
  };
  fam.d1_log_abs = [=](int n, double x) { return 1.0 / (x + shift(n)) - x; };
  fam.d2_log_abs = [=](int n, double x) {
    const double v = x + shift(n);
    return -1.0 / (v * v) - 1.0;
  };
  // psi > 0 right of -e^v; the maximizer e^{-v} g(v) lies in (0, 1).
  const double a_min = std::min(shift(1), std::exp(u));
  fam.window_lo = -0.5 * a_min;
  fam.window_hi = 3.0;
  return fam;
}

IntegrandFamily gaussian_family() {
  IntegrandFamily fam;
  fam.log_abs = [](int, double x) { return -0.5 * x * x; };
  fam.sign = [](int, double) { return 1; };
  fam.d1_log_abs = [](int, double x) { return -x; };
  fam.d2_log_abs = [](int, double) { return -1.0; };
  fam.window_lo = -5.0;
  fam.window_hi = 5.0;
  return fam;
}

double gaussian_rep_logZ(int N, double h) {
  if (N < 1) throw DomainError("gaussian_rep_logZ: N must be >= 1");
  return 0.5 * std::log(N / (2.0 * std::numbers::pi)) + quad_log_integral(psi_family(h), N);
}

LaplaceResult laplace_approx(const IntegrandFamily& family, int n) {
  require_family(family);
  if (n < 1) throw DomainError("laplace_approx: n must be >= 1");
  const double x = locate_maximizer(family, n);
  const double margin = 1e-8 * (family.window_hi - family.window_lo);
  if (x - family.window_lo < margin || family.window_hi - x < margin) {
    throw HypothesisError("laplace_approx: maximizer on the boundary of the window");
  }
  if (family.sign(n, x) <= 0) throw HypothesisError("laplace_approx: psi_n not positive at maximizer");
  const double f2 = second_derivative(family, n, x);
  if (!(f2 < -kMinCurvature)) {
    throw HypothesisError("laplace_approx: f'' at the maximizer is not negative");
  }

  LaplaceResult res;
  res.maximizer = x;
  res.second_derivative = f2;
  res.log_asymptote = n * family.log_abs(n, x) + 0.5 * std::log(2.0 * std::numbers::pi / (-n * f2));
  res.log_integral_quadrature = quad_log_integral(family, n);
  return res;
}

double asympzeta_ratio(int N, double u, double t, double eta) {
  if (N < 1) throw DomainError("asympzeta_ratio: N must be >= 1");
  const double v = u + t * std::pow(static_cast<double>(N), -eta);
  const double log_r = exact::log_partition(N, ModelParams(v, 0.0)) - N * thermo::p0(v) +
                       0.5 * std::log(2.0 - thermo::g(u));
  return std::exp(log_r);
}

double free_energy_correction(int N, const ModelParams& params, double y) {
  const double x = 2.0 * params.J() * y + params.h() - params.J();
  return std::exp(exact::log_partition(N, ModelParams(x, 0.0)) - N * thermo::p0(x));
}

double free_energy_correction_limit(const ModelParams& params, double y) {
  const double x = 2.0 * params.J() * y + params.h() - params.J();
  return 1.0 / std::sqrt(2.0 - thermo::g(x));
}

}  // namespace imd::laplace
