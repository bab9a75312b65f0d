#include "imd/verify/criteria.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "imd/error.hpp"
#include "imd/exact.hpp"
#include "imd/laplace.hpp"
#include "imd/limits.hpp"
#include "imd/phase.hpp"
#include "imd/thermo.hpp"
#include "imd/verify/enumerate.hpp"

namespace imd::verify {
namespace {

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

// Accumulates sub-checks; the criterion passes only if all of them do.
class Checks {
 public:
  explicit Checks(CriterionResult& out) : out_(out) {}

  void expect(bool ok, std::string line) {
    if (!ok) {
      all_ok_ = false;
      line = "FAIL " + line;
    }
    out_.lines.push_back(std::move(line));
  }
  bool ok() const { return all_ok_; }

 private:
  CriterionResult& out_;
  bool all_ok_ = true;
};

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (!(v[i] < v[i - 1])) return false;
  }
  return true;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ", ") + fmt("%.3e", x);
  return "[" + s + "]";
}

double unique_maximizer(const ModelParams& params) {
  return phase::classify(params).maximizers.front();
}

double mass_outside(const exact::MonomerLaw& law, double centre, double radius) {
  double mass = 0.0;
  for (int k = 0; k <= law.max_dimers(); ++k) {
    if (std::abs(law.density(k) - centre) > radius) mass += law.probabilities()[k];
  }
  return mass;
}

void algebraic_identities(Checks& c, CriterionResult& r) {
  double residual = 0.0, forms = 0.0, slope = 0.0;
  for (int i = 0; i <= 600; ++i) {
    const double h = -30.0 + 0.1 * i;
    const double g = thermo::g(h);
    residual = std::max(residual, std::abs(g * g - std::exp(2.0 * h) * thermo::one_minus_g(h)));
    forms = std::max(forms, std::abs(thermo::p0_log_form(h) - thermo::p0_field_form(h)));
    const double step = 1e-5;
    const double fd = (thermo::p0(h + step) - thermo::p0(h - step)) / (2.0 * step);
    slope = std::max(slope, std::abs(fd - g));
  }
  c.expect(residual < 1e-12, fmt("max |g^2 - e^{2h}(1-g)| = %.3e  (< 1e-12)", residual));
  c.expect(forms < 1e-12, fmt("max |p0 log form - p0 field form| = %.3e  (< 1e-12)", forms));
  c.expect(slope < 1e-6, fmt("max |finite-difference p0' - g| = %.3e  (< 1e-6)", slope));
  r.summary = fmt("residual %.1e, forms %.1e, slope %.1e", residual, forms, slope);
}

void enumeration_oracle(Checks& c, CriterionResult& r) {
  double worst = 0.0;
  for (int N = 2; N <= 8; ++N) {
    const auto counts = enumerate_matchings(N);
    bool counts_ok = true;
    for (std::size_t k = 0; k < counts.size(); ++k) {
      const double direct = std::log(static_cast<double>(counts[k]));
      counts_ok &= std::abs(direct - exact::config_count_log(N, static_cast<int>(k))) < 1e-12;
    }
    c.expect(counts_ok, fmt("N=%d matching counts by dimer number agree", N));
    for (double h : {-1.0, 0.0, 1.0}) {
      for (double J : {0.0, 1.0, 2.0}) {
        const ModelParams p(h, J);
        const double brute = brute_force_log_partition(N, p);
        const double combinatorial = exact::log_partition(N, p);
        const double diff = std::abs(brute - combinatorial);
        worst = std::max(worst, diff);
        c.expect(diff < 1e-12, fmt("N=%d h=%+.0f J=%.0f  log Z brute %.15f  combinatorial %.15f  "
                                   "diff %.1e",
                                   N, h, J, brute, combinatorial, diff));
      }
    }
  }
  r.summary = fmt("189 cases, max |diff| %.1e (< 1e-12)", worst);
}

void gaussian_representation(Checks& c, CriterionResult& r) {
  double worst = 0.0;
  for (int N : {2, 4, 10, 50, 100, 101}) {
    for (double h : {-1.0, 0.0, 1.0}) {
      const double rep = laplace::gaussian_rep_logZ(N, h);
      const double diff = std::abs(rep - exact::log_partition(N, ModelParams(h, 0.0)));
      worst = std::max(worst, diff);
      c.expect(diff < 1e-8, fmt("N=%d h=%+.0f  |diff| %.2e", N, h, diff));
    }
  }
  const double closed = std::abs(laplace::gaussian_rep_logZ(2, 0.0) - std::log(1.5));
  c.expect(closed < 1e-8, fmt("N=2 h=0 vs log 1.5: %.2e", closed));
  r.summary = fmt("max |diff| %.1e (< 1e-8), N=2 closed form %.1e", worst, closed);
}

void laplace_expansion(Checks& c, CriterionResult& r) {
  double worst_1e3 = 0.0;
  for (double u : {-1.0, 0.0, 1.0}) {
    std::vector<double> err;
    for (int N : {100, 1000, 10000}) err.push_back(std::abs(laplace::asympzeta_ratio(N, u, 0.0, 0.0) - 1.0));
    worst_1e3 = std::max(worst_1e3, err[1]);
    c.expect(err[1] < 0.02 && strictly_decreasing(err),
             fmt("u=%+.0f |R_N - 1| over N=1e2,1e3,1e4: %s", u, join(err).c_str()));
  }
  r.summary = fmt("max |R_1000 - 1| %.2e (< 0.02), decreasing", worst_1e3);
}

void convolution_identity(Checks& c, CriterionResult& r) {
  const ModelParams p(0.0, 1.0);
  const double m_star = unique_maximizer(p);
  double worst = 0.0;
  for (int N : {4, 20, 100}) {
    const exact::MonomerLaw law(N, p);
    const double var_S = law.central_moment(2);
    for (double eta : {0.0, 0.25, 0.5}) {
      for (double u : {0.0, m_star}) {
        // Grid over the bulk of the convolved variable.
        const double n = N;
        const double centre = (law.mean_monomers() - n * u) * std::pow(n, eta - 1.0);
        const double sd = std::sqrt(std::pow(n, 2.0 * eta - 1.0) / 2.0 +
                                    var_S * std::pow(n, 2.0 * eta - 2.0));
        double rel = 0.0;
        for (int i = 0; i <= 200; ++i) {
          const double x = centre + sd * (-5.0 + 0.05 * i);
          const auto d = exact::convolution_density(N, p, {eta, u, x});
          rel = std::max(rel, std::abs(std::expm1(d.log_analytic - d.log_mixture)));
        }
        worst = std::max(worst, rel);
        c.expect(rel < 1e-8, fmt("N=%d eta=%.2f u=%.6f  max relative diff %.2e", N, eta, u, rel));
      }
    }
  }
  r.summary = fmt("18 cases x 201 points, max relative diff %.1e (< 1e-8)", worst);
}

void clt_free_case(Checks& c, CriterionResult& r) {
  const ModelParams p(0.0, 0.0);
  const double g0 = thermo::g(0.0);
  const limits::Gaussian target{0.0, thermo::g_derivative(0.0, 1)};
  const std::vector<int> Ns{100, 1000, 10000};
  std::vector<double> ks;
  for (int N : Ns) ks.push_back(limits::ks_distance(limits::scaled_law(N, p, 0.5, g0), target));
  c.expect(strictly_decreasing(ks) && ks.back() < 0.05,
           fmt("KS vs N(0, %.6f) over N=1e2,1e3,1e4: %s  (last < 0.05)", target.variance,
               join(ks).c_str()));
  const double outside = mass_outside(exact::MonomerLaw(10000, p), g0, 0.05);
  c.expect(outside < 0.01, fmt("N=1e4 mass outside g(0) +- 0.05: %.3e  (< 0.01)", outside));
  r.summary = fmt("KS %.3e at N=1e4, LLN tail %.1e", ks.back(), outside);
}

void clt_interacting(Checks& c, CriterionResult& r) {
  const ModelParams p(0.2, 0.5);
  const double sigma2 = phase::clt_variance(p);
  const double reduced = phase::clt_variance_reduced(p);
  c.expect(std::abs(sigma2 - reduced) < 1e-12,
           fmt("sigma^2 = %.15f, reduced form %.15f, diff %.1e", sigma2, reduced,
               std::abs(sigma2 - reduced)));
  const double m_star = unique_maximizer(p);
  const limits::Gaussian target{0.0, sigma2};
  std::vector<double> ks;
  for (int N : {100, 1000, 10000}) ks.push_back(limits::ks_distance(limits::scaled_law(N, p, 0.5, m_star), target));
  c.expect(strictly_decreasing(ks) && ks.back() < 0.05,
           fmt("KS over N=1e2,1e3,1e4: %s  (last < 0.05)", join(ks).c_str()));
  r.summary = fmt("sigma^2 %.10f, KS %.3e at N=1e4", sigma2, ks.back());
}

void critical_law(Checks& c, CriterionResult& r) {
  const auto cp = phase::find_critical_point();
  const ModelParams p(cp.h_c, cp.J_c);
  const limits::Quartic target{cp.lambda_c};
  std::vector<double> ks;
  for (int N : {1000, 10000, 100000}) ks.push_back(limits::ks_distance(limits::scaled_law(N, p, 0.75, cp.m_c), target));
  c.expect(strictly_decreasing(ks),
           fmt("KS vs quartic law over N=1e3,1e4,1e5: %s  (decreasing)", join(ks).c_str()));
  c.expect(ks[1] < 0.1, fmt("KS at N=1e4: %.3e  (< 0.1)", ks[1]));
  const double v1 = limits::scaled_law(1000, p, 0.5, cp.m_c).variance();
  const double v16 = limits::scaled_law(16000, p, 0.5, cp.m_c).variance();
  c.expect(v16 / v1 > 2.0, fmt("sqrt(N)-scaled variance %.4f -> %.4f, factor %.3f  (> 2)", v1,
                               v16, v16 / v1));
  r.summary = fmt("KS %.3e at N=1e4, variance growth %.2f", ks[1], v16 / v1);
}

void coexistence(Checks& c, CriterionResult& r) {
  const auto gp = phase::gamma_point(2.0);
  const double height = std::abs(thermo::tilde_p(gp.m1, ModelParams(gp.h, gp.J)) -
                                 thermo::tilde_p(gp.m2, ModelParams(gp.h, gp.J)));
  c.expect(height < 1e-12, fmt("J=2: h = %.15f, |tilde_p(m1) - tilde_p(m2)| = %.1e", gp.h, height));
  std::vector<double> gap;
  for (int N : {1000, 10000, 100000}) {
    const auto masses = limits::coexistence_masses(N, gp);
    gap.push_back(std::max(std::abs(masses.mass1 - gp.rho1), std::abs(masses.mass2 - gp.rho2)));
  }
  c.expect(strictly_decreasing(gap) && gap.back() < 0.05,
           fmt("J=2 basin masses vs (%.6f, %.6f) over N=1e3,1e4,1e5: %s  (last < 0.05)", gp.rho1,
               gp.rho2, join(gap).c_str()));

  std::vector<double> Js;
  for (int i = 0; i <= 97; ++i) Js.push_back(1.5 + 0.5 * i);
  const auto curve = phase::trace_gamma(Js);
  bool ordered = true;
  double closed = 0.0;
  for (const auto& q : curve) {
    ordered &= q.rho1 < q.rho2;
    closed = std::max(closed, std::abs(q.rho1 / q.rho2 - phase::mixture_ratio_closed_form(q)));
  }
  c.expect(ordered, fmt("rho1 < rho2 at all %zu traced J in [1.5, 50]", curve.size()));
  c.expect(closed < 1e-10, fmt("b-formula vs closed-form ratio: max diff %.1e  (< 1e-10)", closed));
  const double ratio = curve.back().rho1 / curve.back().rho2;
  const double bound = std::abs(ratio - 1.0 / std::numbers::sqrt2);
  c.expect(bound < 0.02, fmt("J=50: rho1/rho2 = %.6f, |. - 1/sqrt2| = %.2e  (< 0.02)", ratio, bound));
  r.summary = fmt("mass gap %.3e at N=1e5, rho1/rho2(50) %.4f", gap.back(), ratio);
}

void variational_cross_check(Checks& c, CriterionResult& r) {
  double worst = 0.0;
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const ModelParams p(-2.0 + 0.2 * i, 0.2 * j);
      worst = std::max(worst, std::abs(thermo::variational_pressure(p) -
                                       thermo::variational_pressure_rate_route(p)));
    }
  }
  c.expect(worst < 1e-10, fmt("h in [-2,2], J in [0,4], 21x21: max route diff %.1e  (< 1e-10)", worst));
  double gap = 0.0;
  const ModelParams samples[] = {{0.0, 0.0}, {0.2, 0.5}, {-1.0, 1.0}, {1.0, 2.0}, {0.5, 3.0}};
  for (const auto& p : samples) {
    const double d = std::abs(exact::pressure(10000, p) - thermo::variational_pressure(p));
    gap = std::max(gap, d);
    c.expect(d < 2e-3, fmt("h=%+.1f J=%.1f  |p_N - p| at N=1e4: %.3e  (< 2e-3)", p.h(), p.J(), d));
  }
  r.summary = fmt("route diff %.1e, finite-N gap %.1e", worst, gap);
}

struct Definition {
  const char* name;
  double time_limit;
  void (*body)(Checks&, CriterionResult&);
};

const Definition kCriteria[] = {
    {"algebraic identities", 1.0, algebraic_identities},
    {"enumeration oracle", 5.0, enumeration_oracle},
    {"gaussian representation", 10.0, gaussian_representation},
    {"laplace expansion", 30.0, laplace_expansion},
    {"convolution identity", 30.0, convolution_identity},
    {"free case LLN and CLT", 10.0, clt_free_case},
    {"interacting CLT", 10.0, clt_interacting},
    {"critical quartic law", 60.0, critical_law},
    {"coexistence mixture", 120.0, coexistence},
    {"variational cross-check", 30.0, variational_cross_check},
};

}  // namespace

std::optional<Suite> parse_suite(std::string_view name) {
  if (name == "thermo") return Suite::Thermo;
  if (name == "exact") return Suite::Exact;
  if (name == "laplace") return Suite::Laplace;
  if (name == "limits") return Suite::Limits;
  if (name == "all") return Suite::All;
  return std::nullopt;
}

std::string to_string(Suite suite) {
  switch (suite) {
    case Suite::Thermo: return "thermo";
    case Suite::Exact: return "exact";
    case Suite::Laplace: return "laplace";
    case Suite::Limits: return "limits";
    case Suite::All: return "all";
  }
  return "?";
}

std::vector<int> criteria_in(Suite suite) {
  switch (suite) {
    case Suite::Thermo: return {1, 10};
    case Suite::Exact: return {2, 5};
    case Suite::Laplace: return {3, 4};
    case Suite::Limits: return {6, 7, 8, 9};
    case Suite::All: return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
  }
  return {};
}

CriterionResult run_criterion(int id) {
  if (id < 1 || id > 10) throw DomainError("run_criterion: id must lie in 1..10");
  const Definition& def = kCriteria[id - 1];
  CriterionResult result;
  result.id = id;
  result.name = def.name;
  result.time_limit = def.time_limit;
  Checks checks(result);
  const auto start = std::chrono::steady_clock::now();
  try {
    def.body(checks, result);
  } catch (const Error& e) {
    checks.expect(false, std::string("error: ") + e.what());
    result.summary = std::string("error: ") + e.what();
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  checks.expect(result.seconds < def.time_limit,
                fmt("runtime %.2f s  (< %.0f s)", result.seconds, def.time_limit));
  result.passed = checks.ok();
  return result;
}

std::vector<CriterionResult> run_suite(Suite suite) {
  std::vector<CriterionResult> out;
  for (int id : criteria_in(suite)) out.push_back(run_criterion(id));
  return out;
}

std::string format_line(const CriterionResult& r) {
  return fmt("%s  %2d  %-24s (%6.2f s)  %s", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(),
             r.seconds, r.summary.c_str());
}

}  // namespace imd::verify
