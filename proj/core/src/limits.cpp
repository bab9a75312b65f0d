#include "imd/limits.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <string>

#include "imd/error.hpp"

namespace imd::limits {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Cumulative integrals of exp(-s^4) on [0, s_i], s_i = i / kCellsPerUnit, built
// once by adaptive quadrature. Beyond kMaxS the integrand is below 1e-500.
class QuarticTable {
 public:
  static constexpr int kCellsPerUnit = 64;
  static constexpr double kMaxS = 6.0;

  QuarticTable() {
    const int cells = static_cast<int>(kMaxS * kCellsPerUnit);
    cumulative_.resize(cells + 1, 0.0);
    for (int i = 0; i < cells; ++i) {
      cumulative_[i + 1] = cumulative_[i] + cell(i * step(), (i + 1) * step());
    }
    second_moment_ = Quad::integrate([](double s) { return s * s * std::exp(-s * s * s * s); },
                                     0.0, kMaxS, 20, 1e-15);
  }

  // int_0^s exp(-t^4) dt for s >= 0.
  double partial(double s) const {
    if (s >= kMaxS) return half();
    const int i = static_cast<int>(s / step());
    const double base = i * step();
    return cumulative_[i] + (s > base ? partial_cell(base, s) : 0.0);
  }
  double half() const { return cumulative_.back(); }
  double half_second_moment() const { return second_moment_; }

 private:
  using Quad = boost::math::quadrature::gauss_kronrod<double, 15>;
  static double step() { return 1.0 / kCellsPerUnit; }
  static double cell(double a, double b) {
    return Quad::integrate([](double s) { return std::exp(-s * s * s * s); }, a, b, 8, 1e-15);
  }
  // One 15-point Kronrod pass; exp(-t^4) is entire and the cell is short.
  static double partial_cell(double a, double b) {
    return Quad::integrate([](double s) { return std::exp(-s * s * s * s); }, a, b, 0);
  }
  std::vector<double> cumulative_;
  double second_moment_;
};

const QuarticTable& quartic_table() {
  static const QuarticTable table;
  return table;
}

// a in density exp(-a x^4).
double quartic_rate(const Quartic& q) { return -q.lambda_c / 24.0; }

double quartic_cdf(const Quartic& q, double x) {
  const auto& t = quartic_table();
  const double s = std::pow(quartic_rate(q), 0.25) * std::abs(x);
  const double tail = 0.5 * t.partial(s) / t.half();
  return x >= 0.0 ? 0.5 + tail : 0.5 - tail;
}

double gaussian_cdf(const Gaussian& gs, double x) {
  return 0.5 * std::erfc(-(x - gs.mean) / std::sqrt(2.0 * gs.variance));
}

// Jump points of the limit law, if any.
std::vector<double> jumps(const LimitLaw& law) {
  return std::visit(overloaded{[](const PointMass& p) { return std::vector<double>{p.m}; },
                               [](const Mixture& mx) { return std::vector<double>{mx.m1, mx.m2}; },
                               [](const auto&) { return std::vector<double>{}; }},
                    law);
}

}  // namespace

ScaledLaw::ScaledLaw(const exact::MonomerLaw& law, double eta, double u)
    : N_(law.N()), params_(law.params()), eta_(eta), u_(u) {
  if (!(eta >= 0.0) || !std::isfinite(eta) || !std::isfinite(u)) {
    throw DomainError("scaled_law: eta must be finite and >= 0, u finite");
  }
  const double scale = std::pow(static_cast<double>(N_), eta);
  const double centre = N_ * u;
  atoms_.reserve(law.size());
  for (int k = law.max_dimers(); k >= 0; --k) {
    atoms_.push_back({(law.monomers(k) - centre) / scale, law.probabilities()[k]});
  }
}

double ScaledLaw::mean() const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.probability * a.position;
  return m;
}

double ScaledLaw::variance() const {
  const double m = mean();
  double v = 0.0;
  for (const auto& a : atoms_) v += a.probability * (a.position - m) * (a.position - m);
  return v;
}

ScaledLaw scaled_law(int N, const ModelParams& params, double eta, double u) {
  return ScaledLaw(exact::MonomerLaw(N, params), eta, u);
}

void validate(const LimitLaw& law) {
  std::visit(overloaded{
                 [](const PointMass& p) {
                   if (!std::isfinite(p.m)) throw DomainError("PointMass: location must be finite");
                 },
                 [](const Gaussian& gs) {
                   if (!(gs.variance > 0.0) || !std::isfinite(gs.mean)) {
                     throw DomainError("Gaussian: variance must be > 0");
                   }
                 },
                 [](const Quartic& q) {
                   if (!(q.lambda_c < 0.0)) throw DomainError("Quartic: lambda_c must be < 0");
                 },
                 [](const Mixture& mx) {
                   if (!(mx.rho1 >= 0.0 && mx.rho2 >= 0.0) ||
                       std::abs(mx.rho1 + mx.rho2 - 1.0) > 1e-12) {
                     throw DomainError("Mixture: weights must be non-negative and sum to 1");
                   }
                 }},
             law);
}

double limit_cdf(const LimitLaw& law, double x) {
  validate(law);
  return std::visit(overloaded{
                        [x](const PointMass& p) { return x >= p.m ? 1.0 : 0.0; },
                        [x](const Gaussian& gs) { return gaussian_cdf(gs, x); },
                        [x](const Quartic& q) { return quartic_cdf(q, x); },
                        [x](const Mixture& mx) {
                          return (x >= mx.m1 ? mx.rho1 : 0.0) + (x >= mx.m2 ? mx.rho2 : 0.0);
                        }},
                    law);
}

double limit_cdf_left(const LimitLaw& law, double x) {
  validate(law);
  return std::visit(overloaded{
                        [x](const PointMass& p) { return x > p.m ? 1.0 : 0.0; },
                        [x](const Gaussian& gs) { return gaussian_cdf(gs, x); },
                        [x](const Quartic& q) { return quartic_cdf(q, x); },
                        [x](const Mixture& mx) {
                          return (x > mx.m1 ? mx.rho1 : 0.0) + (x > mx.m2 ? mx.rho2 : 0.0);
                        }},
                    law);
}

double quartic_normalizer(const Quartic& law) {
  validate(law);
  return 2.0 * quartic_table().half() / std::pow(quartic_rate(law), 0.25);
}

double quartic_density(const Quartic& law, double x) {
  return std::exp(law.lambda_c / 24.0 * x * x * x * x) / quartic_normalizer(law);
}

double quartic_variance(const Quartic& law) {
  validate(law);
  const auto& t = quartic_table();
  return t.half_second_moment() / t.half() / std::sqrt(quartic_rate(law));
}

double ks_distance(const ScaledLaw& scaled, const LimitLaw& law) {
  validate(law);
  const auto atoms = scaled.atoms();
  std::vector<double> points;
  points.reserve(atoms.size() + 2);
  for (const auto& a : atoms) points.push_back(a.position);
  for (double j : jumps(law)) points.push_back(j);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  long double below = 0.0L;  // P(X_N < x)
  std::size_t next = 0;
  double sup = 0.0;
  for (double x : points) {
    while (next < atoms.size() && atoms[next].position < x) below += atoms[next++].probability;
    long double at_or_below = below;
    for (std::size_t j = next; j < atoms.size() && atoms[j].position == x; ++j) {
      at_or_below += atoms[j].probability;
    }
    const double left = std::abs(static_cast<double>(below) - limit_cdf_left(law, x));
    const double right = std::abs(static_cast<double>(at_or_below) - limit_cdf(law, x));
    sup = std::max({sup, left, right});
  }
  return std::min(sup, 1.0);
}

ConvergenceStudy convergence_study(const ModelParams& params, double eta, double u,
                                   const LimitLaw& law, std::span<const int> N_list) {
  for (std::size_t i = 1; i < N_list.size(); ++i) {
    if (N_list[i] <= N_list[i - 1]) throw DomainError("convergence_study: N_list must increase");
  }
  ConvergenceStudy study{{}, 0, true};
  for (int N : N_list) {
    const double ks = ks_distance(scaled_law(N, params, eta, u), law);
    const bool decreased = study.rows.empty() || ks < study.rows.back().ks;
    if (!decreased) ++study.inversions;
    study.rows.push_back({N, ks, decreased});
  }
  study.trend_ok = study.inversions <= 1;
  return study;
}

BasinMasses coexistence_masses(int N, const phase::GammaPoint& point) {
  phase::mixture_weights(point);  // validates the point
  const ModelParams params(point.h, point.J);
  double split = -1.0;
  for (const auto& sp : phase::solve_consistency(params)) {
    if (sp.kind == phase::PointKind::Minimum && sp.m > point.m1 && sp.m < point.m2) split = sp.m;
  }
  if (split < 0.0) throw DomainError("coexistence_masses: no minimum between the two maxima");

  const exact::MonomerLaw law(N, params);
  double mass1 = 0.0;
  for (int k = 0; k <= law.max_dimers(); ++k) {
    if (law.density(k) < split) mass1 += law.probabilities()[k];
  }
  return {mass1, 1.0 - mass1};
}

}  // namespace imd::limits
