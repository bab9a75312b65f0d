#include "imd/phase.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>

#include "imd/thermo.hpp"

namespace imd::phase {
namespace {

// Stationary points closer than this are one degenerate point.
constexpr double kMergeDistance = 1e-5;

double residual(double m, const ModelParams& p) {
  return m - thermo::g((2.0 * m - 1.0) * p.J() + p.h());
}

// |tilde_p''(m)| / 2J = |1 - 2J g'(x)|: zero exactly at the critical merge,
// 1 as J -> 0. Only meaningful for J > 0.
double reduced_curvature(double m, const ModelParams& params) {
  return std::abs(thermo::tilde_p(m, params, 2)) / (2.0 * params.J());
}

// Root of the residual on [lo, hi], assuming a sign change (or a zero at an
// end). Bisection down to adjacent doubles, then a Newton polish.
std::optional<double> bracketed_root(double lo, double hi, const ModelParams& p) {
  double r_lo = residual(lo, p);
  const double r_hi = residual(hi, p);
  if (r_lo == 0.0) return lo;
  if (r_hi == 0.0) return hi;
  if ((r_lo < 0.0) == (r_hi < 0.0)) return std::nullopt;

  for (int it = 0; it < 2000; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double r_mid = residual(mid, p);
    if (r_mid == 0.0) return mid;
    if ((r_mid < 0.0) == (r_lo < 0.0)) {
      lo = mid;
      r_lo = r_mid;
    } else {
      hi = mid;
    }
  }
  double m = 0.5 * (lo + hi);
  const double slope = 1.0 - 2.0 * p.J() * thermo::g_derivative((2.0 * m - 1.0) * p.J() + p.h(), 1);
  if (std::abs(slope) > 1e-6) {
    const double cand = m - residual(m, p) / slope;
    if (cand >= lo && cand <= hi && std::abs(residual(cand, p)) < std::abs(residual(m, p))) m = cand;
  }
  return m;
}

// Values of g at which tilde_p'' vanishes on the consistency curve: the roots
// of 4J g^2 - (4J+1) g + 2 = 0 inside (0, 1). Empty below the critical coupling.
std::optional<std::pair<double, double>> spinodal_densities(double J) {
  if (!(J > 0.0)) return std::nullopt;
  const double disc = (4.0 * J + 1.0) * (4.0 * J + 1.0) - 32.0 * J;
  if (!(disc > 0.0)) return std::nullopt;
  const double d = std::sqrt(disc);
  const double lo = ((4.0 * J + 1.0) - d) / (8.0 * J);
  // Second root via Vieta's product g- g+ = 1 / (2J); avoids cancellation.
  const double hi = 1.0 / (2.0 * J * lo);
  if (!(lo > 0.0 && hi < 1.0)) return std::nullopt;
  return std::pair{lo, hi};
}

// Field argument x at which g(x) = gs, from e^{2x} = g^2 / (1 - g).
double field_for_density(double gs) { return std::log(gs) - 0.5 * std::log1p(-gs); }

// m at which the field (2m-1)J + h equals x.
double density_for_field(double x, const ModelParams& p) {
  return std::clamp((x - p.h()) / (2.0 * p.J()) + 0.5, 0.0, 1.0);
}

// Breakpoints splitting [0,1] into pieces on which the residual is monotone:
// increasing, decreasing, increasing.
std::vector<double> monotone_breakpoints(const ModelParams& p) {
  std::vector<double> cuts{0.0};
  if (auto s = spinodal_densities(p.J())) {
    cuts.push_back(density_for_field(field_for_density(s->first), p));
    cuts.push_back(density_for_field(field_for_density(s->second), p));
  }
  cuts.push_back(1.0);
  return cuts;
}

StationaryPoint make_point(double m, PointKind kind, int order, const ModelParams& p) {
  return {m, thermo::tilde_p(m, p, 0), thermo::tilde_p(m, p, 2), order, kind};
}

struct LocalMaxima {
  std::optional<double> low;   // dimer-side maximum
  std::optional<double> high;  // monomer-side maximum
};

// The two outer monotone pieces each contain at most one local maximum.
LocalMaxima outer_maxima(const ModelParams& p) {
  const auto cuts = monotone_breakpoints(p);
  LocalMaxima out;
  out.low = bracketed_root(cuts[0], cuts[1], p);
  out.high = bracketed_root(cuts[cuts.size() - 2], cuts.back(), p);
  return out;
}

}  // namespace

std::string to_string(Regime regime) {
  switch (regime) {
    case Regime::Unique:
      return "unique";
    case Regime::Coexistence:
      return "coexistence";
    case Regime::Critical:
      return "critical";
  }
  return "?";
}

std::string to_string(PointKind kind) {
  switch (kind) {
    case PointKind::Maximum:
      return "maximum";
    case PointKind::Minimum:
      return "minimum";
    case PointKind::Inflection:
      return "inflection";
  }
  return "?";
}

std::vector<StationaryPoint> solve_consistency(const ModelParams& params) {
  if (params.J() == 0.0) {
    // tilde_p is flat in m; the consistency equation still singles out g(h).
    return {make_point(thermo::g(params.h()), PointKind::Maximum, 2, params)};
  }

  const auto cuts = monotone_breakpoints(params);
  struct Root {
    double m;
    PointKind kind;
  };
  std::vector<Root> roots;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i] && cuts.size() > 2) continue;
    // The residual increases on pieces 0 and 2: roots there are maxima.
    const PointKind kind = (i % 2 == 0) ? PointKind::Maximum : PointKind::Minimum;
    if (auto m = bracketed_root(cuts[i], cuts[i + 1], params)) roots.push_back({*m, kind});
  }

  // Merge clusters of numerically coincident roots: a (max, min) pair is an
  // inflection, a (max, min, max) triple is a quartic maximum.
  std::vector<StationaryPoint> points;
  for (std::size_t i = 0; i < roots.size();) {
    std::size_t j = i + 1;
    while (j < roots.size() && roots[j].m - roots[j - 1].m < kMergeDistance) ++j;
    const std::size_t count = j - i;
    if (count == 1) {
      const auto& r = roots[i];
      const int order = r.kind == PointKind::Maximum &&
                                reduced_curvature(r.m, params) < kCriticalCurvatureTol
                            ? 4
                            : 2;
      points.push_back(make_point(r.m, r.kind, order, params));
    } else if (count == 2) {
      points.push_back(make_point(roots[i].m, PointKind::Inflection, 3, params));
    } else {
      points.push_back(make_point(roots[i + 1].m, PointKind::Maximum, 4, params));
    }
    i = j;
  }
  return points;
}

PhaseReport classify(const ModelParams& params) {
  PhaseReport report;
  report.stationary_points = solve_consistency(params);

  if (params.J() == 0.0) {
    report.regime = Regime::Unique;
    report.maximizers = {report.stationary_points.front().m};
    return report;
  }

  std::vector<const StationaryPoint*> maxima;
  for (const auto& sp : report.stationary_points) {
    if (sp.kind == PointKind::Maximum) maxima.push_back(&sp);
  }
  if (maxima.empty()) {
    // Cannot happen for a smooth function with inward-pointing ends; guard anyway.
    throw Error("classify: no maximum of tilde_p found");
  }
  const auto top = std::max_element(maxima.begin(), maxima.end(),
                                    [](auto a, auto b) { return a->value < b->value; });
  const double M = (*top)->value;

  std::vector<const StationaryPoint*> global;
  for (auto sp : maxima) {
    const double gap = M - sp->value;
    if (gap < kEqualHeightTol) {
      global.push_back(sp);
    } else if (gap < kHeightAmbiguityTol) {
      std::ostringstream msg;
      msg << "classify: local maxima at m = " << (*top)->m << " and m = " << sp->m
          << " differ in height by " << gap << ", inside the near-degenerate band";
      throw NearDegenerateError(Regime::Unique, Regime::Coexistence, msg.str());
    }
  }

  if (global.size() >= 2) {
    report.regime = Regime::Coexistence;
    report.maximizers = {global.front()->m, global.back()->m};
    return report;
  }

  const StationaryPoint& best = *global.front();
  const double curvature = reduced_curvature(best.m, params);
  if (best.order == 4 || curvature < kCriticalCurvatureTol) {
    report.regime = Regime::Critical;
  } else if (curvature < kCurvatureAmbiguityTol) {
    std::ostringstream msg;
    msg << "classify: |tilde_p''| / 2J = " << curvature << " at m = " << best.m
        << " is inside the near-critical band";
    throw NearDegenerateError(Regime::Unique, Regime::Critical, msg.str());
  } else {
    report.regime = Regime::Unique;
  }
  report.maximizers = {best.m};
  return report;
}

CriticalPoint find_critical_point() {
  // g'' changes sign from + to - where g(x) = 2 - sqrt(2).
  double lo = -5.0;
  double hi = 5.0;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (thermo::g_derivative(mid, 2) > 0.0 ? lo : hi) = mid;
  }
  const double x_c = 0.5 * (lo + hi);
  const double J_c = 1.0 / (2.0 * thermo::g_derivative(x_c, 1));
  const double m_c = thermo::g(x_c);
  const double h_c = x_c - (2.0 * m_c - 1.0) * J_c;
  const double lambda_c = thermo::tilde_p(m_c, ModelParams(h_c, J_c), 4);
  return {h_c, J_c, m_c, lambda_c};
}

std::pair<double, double> spinodal_fields(double J) {
  const auto s = spinodal_densities(J);
  if (!s || J < 1.0) {
    throw DomainError("no coexistence below the critical coupling (J = " + std::to_string(J) + ")");
  }
  double a = field_for_density(s->first) - (2.0 * s->first - 1.0) * J;
  double b = field_for_density(s->second) - (2.0 * s->second - 1.0) * J;
  if (a > b) std::swap(a, b);
  return {a, b};
}

GammaPoint gamma_point(double J) {
  const auto [h_lo, h_hi] = spinodal_fields(J);

  struct Eval {
    double delta;
    double m1;
    double m2;
  };
  auto evaluate = [J](double h) -> Eval {
    const ModelParams p(h, J);
    const auto mx = outer_maxima(p);
    // Outside the bistable window only one side survives.
    if (!mx.high) return {-1.0, mx.low.value_or(0.0), 0.0};
    if (!mx.low) return {1.0, 0.0, *mx.high};
    return {thermo::tilde_p(*mx.high, p) - thermo::tilde_p(*mx.low, p), *mx.low, *mx.high};
  };

  double lo = h_lo;
  double hi = h_hi;
  Eval at = evaluate(0.5 * (lo + hi));
  double h = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    h = 0.5 * (lo + hi);
    at = evaluate(h);
    if (at.delta == 0.0) break;
    (at.delta > 0.0 ? hi : lo) = h;
    if (std::abs(at.delta) < 1e-15 || hi - lo < 1e-15 * std::max(1.0, std::abs(h))) break;
  }
  // d(delta)/dh = m2 - m1 by the envelope theorem.
  for (int it = 0; it < 3 && at.m2 > at.m1; ++it) {
    const double cand = h - at.delta / (at.m2 - at.m1);
    const Eval next = evaluate(cand);
    if (!(std::abs(next.delta) < std::abs(at.delta))) break;
    h = cand;
    at = next;
  }
  if (!(at.m2 > at.m1)) throw Error("gamma_point: lost one of the two maxima");

  const ModelParams p(h, J);
  GammaPoint gp{};
  gp.J = J;
  gp.h = h;
  gp.m1 = at.m1;
  gp.m2 = at.m2;
  gp.lambda1 = thermo::tilde_p(at.m1, p, 2);
  gp.lambda2 = thermo::tilde_p(at.m2, p, 2);
  const auto w = weights_from_curvature(gp.m1, gp.lambda1, gp.m2, gp.lambda2);
  gp.rho1 = w.rho1;
  gp.rho2 = w.rho2;
  return gp;
}

std::vector<GammaPoint> trace_gamma(std::span<const double> J_values) {
  std::vector<GammaPoint> out;
  out.reserve(J_values.size());
  for (double J : J_values) out.push_back(gamma_point(J));
  return out;
}

MixtureWeights weights_from_curvature(double m1, double lambda1, double m2, double lambda2) {
  if (!(lambda1 < 0.0 && lambda2 < 0.0)) {
    throw DomainError("mixture weights need strictly negative curvatures at both maxima");
  }
  const double b1 = 1.0 / std::sqrt(-lambda1 * (2.0 - m1));
  const double b2 = 1.0 / std::sqrt(-lambda2 * (2.0 - m2));
  const double rho1 = b1 / (b1 + b2);
  return {rho1, 1.0 - rho1};
}

MixtureWeights mixture_weights(const GammaPoint& point) {
  const ModelParams p(point.h, point.J);
  require_density(point.m1, "mixture_weights");
  require_density(point.m2, "mixture_weights");
  const double gap = std::abs(thermo::tilde_p(point.m1, p) - thermo::tilde_p(point.m2, p));
  if (!(point.m1 < point.m2) || gap >= kEqualHeightTol ||
      std::abs(residual(point.m1, p)) > 1e-10 || std::abs(residual(point.m2, p)) > 1e-10) {
    throw DomainError("mixture_weights: input is not a coexistence point");
  }
  return weights_from_curvature(point.m1, thermo::tilde_p(point.m1, p, 2), point.m2,
                                thermo::tilde_p(point.m2, p, 2));
}

double mixture_ratio_closed_form(const GammaPoint& point) {
  const double J = point.J;
  const double num = (2.0 - point.m2) - 4.0 * J * point.m2 * (1.0 - point.m2);
  const double den = (2.0 - point.m1) - 4.0 * J * point.m1 * (1.0 - point.m1);
  return std::sqrt(num / den);
}

namespace {

double unique_maximizer(const ModelParams& params) {
  const PhaseReport report = classify(params);
  if (report.regime != Regime::Unique) {
    throw DomainError("CLT does not hold there: (h, J) is in the " + to_string(report.regime) +
                      " regime");
  }
  return report.maximizers.front();
}

}  // namespace

double clt_variance(const ModelParams& params) {
  if (params.J() == 0.0) return thermo::g_derivative(params.h(), 1);
  const double m = unique_maximizer(params);
  const double lambda = thermo::tilde_p(m, params, 2);
  return -1.0 / lambda - 1.0 / (2.0 * params.J());
}

double clt_variance_reduced(const ModelParams& params) {
  if (params.J() == 0.0) return thermo::g_derivative(params.h(), 1);
  const double m = unique_maximizer(params);
  const double gp = thermo::g_derivative((2.0 * m - 1.0) * params.J() + params.h(), 1);
  return gp / (1.0 - 2.0 * params.J() * gp);
}

}  // namespace imd::phase
