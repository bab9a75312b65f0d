#pragma once

// Exact finite-N Gibbs statistics on the complete graph K_N.
//
// The Hamiltonian depends on a dimer configuration D only through the monomer
// count S_N = N - 2|D|, so the law of S_N is a weighted sum over the dimer
// number k = 0..floor(N/2). Weights are kept as logarithms throughout.

#include <cstddef>
#include <span>
#include <vector>

#include "imd/model.hpp"

namespace imd::exact {

/// log of the number of k-dimer matchings of K_N, N! / ((N-2k)! 2^k k!).
double config_count_log(int N, int k);

/// Exact law of the monomer count S_N under the Gibbs measure. Index k is the
/// dimer number; the monomer count of index k is N - 2k. Immutable.
class MonomerLaw {
 public:
  MonomerLaw(int N, const ModelParams& params);

  int N() const { return N_; }
  const ModelParams& params() const { return params_; }
  int max_dimers() const { return N_ / 2; }
  std::size_t size() const { return log_weights_.size(); }

  int monomers(int k) const { return N_ - 2 * k; }
  double density(int k) const { return static_cast<double>(N_ - 2 * k) / N_; }

  std::span<const double> log_weights() const { return log_weights_; }
  std::span<const double> probabilities() const { return probabilities_; }
  double log_Z() const { return log_Z_; }
  double pressure() const { return log_Z_ / N_; }

  double mean_monomers() const;
  // Central moments of S_N, accumulated around the mean.
  double central_moment(int order) const;

 private:
  int N_;
  ModelParams params_;
  std::vector<double> log_weights_;
  std::vector<double> probabilities_;
  double log_Z_;
};

MonomerLaw monomer_law(int N, const ModelParams& params);

/// log Z_N. Equivalent to monomer_law(N, params).log_Z() but allocation-light.
double log_partition(int N, const ModelParams& params);

/// Pressure density p_N = log Z_N / N.
double pressure(int N, const ModelParams& params);

/// Moment generating function of (S_N - u) / N^eta evaluated at t.
/// At J = 0 this uses the partition-function ratio
/// e^{-tu/N^eta} Z0_N(h + t/N^eta) / Z0_N(h); for J > 0 the expectation is
/// summed directly over the law. Throws OverflowError if the result does not
/// fit in a double.
double mgf(int N, const ModelParams& params, double eta, double u, double t);
double mgf_direct(int N, const ModelParams& params, double eta, double u, double t);
double mgf_ratio(int N, const ModelParams& params, double eta, double u, double t);

/// E[m_N] = E[S_N] / N.
double mean_density(int N, const ModelParams& params);

/// k-th h-derivative (k in 0..4) of the pure hard-core pressure
/// p0_N(h) = log Z_N(h, J=0) / N, via the k-th cumulant of S_N divided by N.
double p0N_derivative(int N, double h, int k);

/// Evaluation point for the Gaussian-convolved, rescaled monomer count
///   W / N^{1/2 - eta} + (S_N - N u) / N^{1 - eta},  W ~ Normal(0, 1/(2J)).
struct ConvolutionQuery {
  double eta = 0.0;
  double u = 0.0;
  double x = 0.0;
};

/// Density of the convolved variable at query.x computed two ways:
/// `analytic` from C_N exp(N F_N(x/N^eta + u)) with
/// F_N(y) = -J y^2 + p0_N(2Jy + h - J), and `mixture` as the explicit Gaussian
/// mixture over the atoms of the monomer law.
struct ConvolutionDensity {
  double analytic;
  double mixture;
  double log_analytic;
  double log_mixture;
};

ConvolutionDensity convolution_density(int N, const ModelParams& params,
                                       const ConvolutionQuery& query);

/// log C_N, the normalizing constant of the analytic form, in closed form:
/// -log Z_N + (1/2) log(J / (pi N)) + (1 - eta) log N.
double convolution_log_normalizer(int N, const ModelParams& params, double eta);

/// Stable log(sum(exp(values))). Returns -inf for an empty or all -inf input.
double log_sum_exp(std::span<const double> values);

}  // namespace imd::exact
