#include "imd/exact.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace imd::exact {
namespace {

// std::lgamma writes the global signgam on glibc; the reentrant variant keeps
// these functions safe to call from several threads.
double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

void require_size(int N, const char* where) {
  if (N < 1) throw DomainError(std::string(where) + ": N must be >= 1, got " + std::to_string(N));
}

void require_eta(double eta, const char* where) {
  if (!(eta >= 0.0) || !std::isfinite(eta)) {
    throw DomainError(std::string(where) + ": eta must be finite and >= 0");
  }
}

std::vector<double> make_log_weights(int N, const ModelParams& params) {
  const double h = params.h();
  const double J = params.J();
  const double log_N = std::log(static_cast<double>(N));
  const double log_N_fact = log_gamma(N + 1.0);
  std::vector<double> lw(static_cast<std::size_t>(N / 2) + 1);
  for (int k = 0; k <= N / 2; ++k) {
    const double S = N - 2.0 * k;
    const double count = log_N_fact - log_gamma(S + 1.0) - k * std::numbers::ln2 -
                         log_gamma(k + 1.0);
    lw[k] = count - k * log_N + (h - J) * S + J * S * S / N;
  }
  return lw;
}

double checked_exp(double log_value, const char* where) {
  if (log_value > std::log(DBL_MAX)) {
    throw OverflowError(std::string(where) + ": result exp(" + std::to_string(log_value) +
                        ") overflows a double");
  }
  return std::exp(log_value);
}

}  // namespace

double log_sum_exp(std::span<const double> values) {
  if (values.empty()) return -std::numeric_limits<double>::infinity();
  const double top = *std::max_element(values.begin(), values.end());
  if (!std::isfinite(top)) return top;
  double sum = 0.0;
  for (double v : values) sum += std::exp(v - top);
  return top + std::log(sum);
}

double config_count_log(int N, int k) {
  require_size(N, "config_count_log");
  if (k < 0 || k > N / 2) {
    throw DomainError("config_count_log: k must lie in [0, " + std::to_string(N / 2) +
                      "], got " + std::to_string(k));
  }
  return log_gamma(N + 1.0) - log_gamma(N - 2.0 * k + 1.0) - k * std::numbers::ln2 -
         log_gamma(k + 1.0);
}

MonomerLaw::MonomerLaw(int N, const ModelParams& params)
    : N_(N), params_(params), log_Z_(0.0) {
  require_size(N, "monomer_law");
  log_weights_ = make_log_weights(N, params);
  // Normalized against the largest weight, not log Z: at large N an ulp of
  // log Z is already ~1e-12 relative.
  const double top = *std::max_element(log_weights_.begin(), log_weights_.end());
  probabilities_.resize(log_weights_.size());
  long double sum = 0.0L;
  for (std::size_t k = 0; k < log_weights_.size(); ++k) {
    probabilities_[k] = std::exp(log_weights_[k] - top);
    sum += probabilities_[k];
  }
  for (double& p : probabilities_) p = static_cast<double>(p / sum);
  log_Z_ = top + std::log(static_cast<double>(sum));
}

double MonomerLaw::mean_monomers() const {
  double mean = 0.0;
  for (std::size_t k = 0; k < probabilities_.size(); ++k) {
    mean += probabilities_[k] * monomers(static_cast<int>(k));
  }
  return mean;
}

double MonomerLaw::central_moment(int order) const {
  const double mean = mean_monomers();
  double acc = 0.0;
  for (std::size_t k = 0; k < probabilities_.size(); ++k) {
    const double d = monomers(static_cast<int>(k)) - mean;
    acc += probabilities_[k] * std::pow(d, order);
  }
  return acc;
}

MonomerLaw monomer_law(int N, const ModelParams& params) { return MonomerLaw(N, params); }

double log_partition(int N, const ModelParams& params) {
  require_size(N, "log_partition");
  return log_sum_exp(make_log_weights(N, params));
}

double pressure(int N, const ModelParams& params) { return log_partition(N, params) / N; }

double mgf_direct(int N, const ModelParams& params, double eta, double u, double t) {
  require_eta(eta, "mgf");
  const MonomerLaw law(N, params);
  const double scale = std::pow(static_cast<double>(N), -eta);
  std::vector<double> terms(law.size());
  for (std::size_t k = 0; k < law.size(); ++k) {
    terms[k] = law.log_weights()[k] - law.log_Z() +
               t * (law.monomers(static_cast<int>(k)) - u) * scale;
  }
  return checked_exp(log_sum_exp(terms), "mgf");
}

double mgf_ratio(int N, const ModelParams& params, double eta, double u, double t) {
  require_eta(eta, "mgf");
  if (params.J() != 0.0) {
    throw DomainError("mgf_ratio: the partition-function ratio form needs J = 0");
  }
  const double shift = t * std::pow(static_cast<double>(N), -eta);
  const double log_value = -u * shift + log_partition(N, params.with_field(params.h() + shift)) -
                           log_partition(N, params);
  return checked_exp(log_value, "mgf");
}

double mgf(int N, const ModelParams& params, double eta, double u, double t) {
  return params.J() == 0.0 ? mgf_ratio(N, params, eta, u, t)
                           : mgf_direct(N, params, eta, u, t);
}

double mean_density(int N, const ModelParams& params) {
  return MonomerLaw(N, params).mean_monomers() / N;
}

double p0N_derivative(int N, double h, int k) {
  const MonomerLaw law(N, ModelParams(h, 0.0));
  switch (k) {
    case 0:
      return law.pressure();
    case 1:
      return law.mean_monomers() / N;
    case 2:
      return law.central_moment(2) / N;
    case 3:
      return law.central_moment(3) / N;
    case 4: {
      const double mu2 = law.central_moment(2);
      return (law.central_moment(4) - 3.0 * mu2 * mu2) / N;
    }
    default:
      throw DomainError("p0N_derivative: order must lie in 0..4, got " + std::to_string(k));
  }
}

double convolution_log_normalizer(int N, const ModelParams& params, double eta) {
  require_eta(eta, "convolution_density");
  if (!(params.J() > 0.0)) throw DomainError("convolution_density: needs J > 0");
  const double n = N;
  return -log_partition(N, params) + 0.5 * std::log(params.J() / (std::numbers::pi * n)) +
         (1.0 - eta) * std::log(n);
}

ConvolutionDensity convolution_density(int N, const ModelParams& params,
                                       const ConvolutionQuery& query) {
  require_size(N, "convolution_density");
  const double log_C = convolution_log_normalizer(N, params, query.eta);
  const double J = params.J();
  const double n = N;

  const double y = query.x * std::pow(n, -query.eta) + query.u;
  const double field = 2.0 * J * y + params.h() - J;
  const double log_analytic = log_C - J * n * y * y + log_partition(N, ModelParams(field, 0.0));

  const MonomerLaw law(N, params);
  const double variance = std::pow(n, 2.0 * query.eta - 1.0) / (2.0 * J);
  const double scale = std::pow(n, query.eta - 1.0);
  const double log_norm = -0.5 * std::log(2.0 * std::numbers::pi * variance);
  std::vector<double> terms(law.size());
  for (std::size_t k = 0; k < law.size(); ++k) {
    const double centre = (law.monomers(static_cast<int>(k)) - n * query.u) * scale;
    const double d = query.x - centre;
    terms[k] = law.log_weights()[k] - law.log_Z() + log_norm - d * d / (2.0 * variance);
  }
  const double log_mixture = log_sum_exp(terms);

  if (!std::isfinite(log_analytic) || !std::isfinite(log_mixture)) {
    throw Error("convolution_density: density underflowed at x = " + std::to_string(query.x));
  }
  return {std::exp(log_analytic), std::exp(log_mixture), log_analytic, log_mixture};
}

}  // namespace imd::exact
