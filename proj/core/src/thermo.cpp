#include "imd/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace imd::thermo {
namespace {

void require_finite(double h, const char* where) {
  if (!std::isfinite(h)) {
    throw DomainError(std::string(where) + ": argument must be finite");
  }
}

// log(1 - g(h)) without forming 1 - g for large h.
double log_one_minus_g(double h) {
  if (h <= 0.0) return std::log1p(-g(h));
  const double a = std::exp(-2.0 * h);
  const double s = std::sqrt(1.0 + 4.0 * a);
  return std::log(4.0) - 2.0 * h - 2.0 * std::log1p(s);
}

// g' as a function of g and q = 1 - g.
double slope(double gv, double q) { return 2.0 * gv * q / (1.0 + q); }

// d/dg of 2g(1-g)/(2-g), and its second derivative.
double slope_dg(double gv, double q) {
  const double two_minus_g = 1.0 + q;
  return 2.0 * (gv * gv - 4.0 * gv + 2.0) / (two_minus_g * two_minus_g);
}
double slope_dg2(double q) {
  const double two_minus_g = 1.0 + q;
  return -8.0 / (two_minus_g * two_minus_g * two_minus_g);
}

// Global maximum of a smooth function on [0,1]: scan a grid for local maxima,
// then bisect the derivative inside each candidate bracket.
double maximize_on_unit_interval(const std::function<double(double)>& f,
                                 const std::function<double(double)>& df) {
  constexpr int kGrid = 2000;
  std::vector<double> values(kGrid + 1);
  for (int i = 0; i <= kGrid; ++i) values[i] = f(static_cast<double>(i) / kGrid);

  // Discrete local maxima, endpoints included: a maximizer within one cell of
  // 0 or 1 leaves values[0] or values[kGrid] on top.
  double best = *std::max_element(values.begin(), values.end());
  for (int i = 0; i <= kGrid; ++i) {
    if ((i > 0 && values[i] < values[i - 1]) || (i < kGrid && values[i] < values[i + 1])) continue;
    double lo = static_cast<double>(std::max(i - 1, 0)) / kGrid;
    double hi = static_cast<double>(std::min(i + 1, kGrid)) / kGrid;
    if (!(df(lo) >= 0.0 && df(hi) <= 0.0)) continue;
    for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (df(mid) > 0.0 ? lo : hi) = mid;
    }
    best = std::max({best, f(lo), f(hi)});
  }
  return best;
}

}  // namespace

double g(double h) {
  require_finite(h, "g");
  if (h <= 0.0) {
    const double e = std::exp(h);
    return 0.5 * e * (std::sqrt(e * e + 4.0) - e);
  }
  // Rationalized form 2 e^h / (sqrt(e^{2h}+4) + e^h), divided through by e^h.
  return 2.0 / (std::sqrt(1.0 + 4.0 * std::exp(-2.0 * h)) + 1.0);
}

double one_minus_g(double h) {
  require_finite(h, "one_minus_g");
  if (h <= 0.0) return 1.0 - g(h);
  const double a = std::exp(-2.0 * h);
  const double s1 = std::sqrt(1.0 + 4.0 * a) + 1.0;
  return 4.0 * a / (s1 * s1);
}

double g_derivative(double h, int k) {
  require_finite(h, "g_derivative");
  const double gv = g(h);
  const double q = one_minus_g(h);
  const double d1 = slope(gv, q);
  switch (k) {
    case 1:
      return d1;
    case 2:
      return slope_dg(gv, q) * d1;
    case 3: {
      const double s1 = slope_dg(gv, q);
      return (slope_dg2(q) * d1 + s1 * s1) * d1;
    }
    default:
      throw DomainError("g_derivative: order must be 1, 2 or 3, got " + std::to_string(k));
  }
}

double p0(double h) {
  require_finite(h, "p0");
  return -0.5 * one_minus_g(h) - 0.5 * log_one_minus_g(h);
}

double p0_log_form(double h) {
  require_finite(h, "p0_log_form");
  const double q = one_minus_g(h);
  return -0.5 * q - 0.5 * std::log(q);
}

double p0_field_form(double h) {
  require_finite(h, "p0_field_form");
  const double gv = g(h);
  return -0.5 * (1.0 - gv) - std::log(gv) + h;
}

double tilde_p(double m, const ModelParams& params, int derivative_order) {
  require_density(m, "tilde_p");
  const double J = params.J();
  const double x = (2.0 * m - 1.0) * J + params.h();
  switch (derivative_order) {
    case 0:
      return -J * m * m + p0(x);
    case 1:
      return 2.0 * J * (g(x) - m);
    case 2:
      return -2.0 * J + 4.0 * J * J * g_derivative(x, 1);
    case 3:
      return 8.0 * J * J * J * g_derivative(x, 2);
    case 4:
      return 16.0 * J * J * J * J * g_derivative(x, 3);
    default:
      throw DomainError("tilde_p: derivative order must be in 0..4, got " +
                        std::to_string(derivative_order));
  }
}

double rate_function(double z) {
  require_density(z, "rate_function");
  const double w = 1.0 - z;
  const double zlogz = z > 0.0 ? z * std::log(z) : 0.0;
  const double wlogw = w > 0.0 ? 0.5 * w * std::log(w) : 0.0;
  return zlogz + wlogw + 0.5 * w;
}

double rate_function_constant() { return -p0(0.0); }

double rate_function_printed(double z) { return rate_function(z) + rate_function_constant(); }

double variational_pressure(const ModelParams& params) {
  return maximize_on_unit_interval(
      [&](double m) { return tilde_p(m, params, 0); },
      [&](double m) { return tilde_p(m, params, 1); });
}

double variational_pressure_rate_route(const ModelParams& params) {
  const double h = params.h();
  const double J = params.J();
  return maximize_on_unit_interval(
      [=](double z) { return (h - J) * z + J * z * z - rate_function(z); },
      [=](double z) {
        // Derivative of the objective; the log terms push the maximizer inside.
        const double dlog = (z > 0.0 ? std::log(z) : -HUGE_VAL) -
                            0.5 * (z < 1.0 ? std::log1p(-z) : -HUGE_VAL);
        return (h - J) + 2.0 * J * z - dlog;
      });
}

}  // namespace imd::thermo
