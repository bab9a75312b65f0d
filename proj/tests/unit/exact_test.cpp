#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "imd/error.hpp"
#include "imd/exact.hpp"
#include "imd/thermo.hpp"
#include "imd/verify/enumerate.hpp"
#include "oracle_values.hpp"

namespace {

using imd::ModelParams;
namespace ex = imd::exact;

TEST(ConfigCount, SmallCases) {
  EXPECT_NEAR(ex::config_count_log(4, 1), std::log(6.0), 1e-14);
  EXPECT_NEAR(ex::config_count_log(4, 2), std::log(3.0), 1e-14);
  EXPECT_NEAR(ex::config_count_log(6, 3), std::log(15.0), 1e-14);
  for (int N : {1, 2, 7, 1000}) EXPECT_EQ(ex::config_count_log(N, 0), 0.0);
  EXPECT_THROW(ex::config_count_log(4, 3), imd::DomainError);
  EXPECT_THROW(ex::config_count_log(4, -1), imd::DomainError);
}

TEST(ConfigCount, MatchesEnumeration) {
  for (int N = 1; N <= 10; ++N) {
    const auto counts = imd::verify::enumerate_matchings(N);
    for (std::size_t k = 0; k < counts.size(); ++k) {
      EXPECT_NEAR(ex::config_count_log(N, static_cast<int>(k)),
                  std::log(static_cast<double>(counts[k])), 1e-12);
    }
  }
  EXPECT_EQ(imd::verify::enumerate_matchings(8),
            (std::vector<std::uint64_t>{1, 28, 210, 420, 105}));
}

TEST(MonomerLaw, TwoVertices) {
  const ex::MonomerLaw law(2, ModelParams(0.0, 0.0));
  EXPECT_NEAR(std::exp(law.log_Z()), 1.5, 1e-15);
  EXPECT_NEAR(law.probabilities()[0], 2.0 / 3.0, 1e-15);  // S = 2
  EXPECT_NEAR(law.probabilities()[1], 1.0 / 3.0, 1e-15);  // S = 0
  EXPECT_NEAR(law.pressure(), std::log(1.5) / 2.0, 1e-15);
}

TEST(MonomerLaw, FourVertices) {
  const ex::MonomerLaw law(4, ModelParams(0.0, 0.0));
  EXPECT_NEAR(std::exp(law.log_Z()), 2.6875, 1e-14);
  EXPECT_NEAR(law.probabilities()[0], 1.0 / 2.6875, 1e-15);
  EXPECT_NEAR(law.probabilities()[1], 1.5 / 2.6875, 1e-15);
  EXPECT_NEAR(law.probabilities()[2], 0.1875 / 2.6875, 1e-15);
  EXPECT_NEAR(std::exp(ex::log_partition(4, ModelParams(0.0, 1.0))), oracle::Z4_h0_J1, 1e-14);
}

TEST(MonomerLaw, SupportParityAndNormalization) {
  for (int N : {1, 2, 3, 17, 1000, 100001}) {
    const ex::MonomerLaw law(N, ModelParams(0.3, 1.7));
    ASSERT_EQ(law.size(), static_cast<std::size_t>(N / 2 + 1));
    double total = 0.0;
    for (int k = 0; k <= law.max_dimers(); ++k) {
      EXPECT_EQ(law.monomers(k) % 2, N % 2);
      EXPECT_GE(law.probabilities()[k], 0.0);
      total += law.probabilities()[k];
    }
    EXPECT_NEAR(total, 1.0, 1e-12);
    EXPECT_TRUE(std::isfinite(law.log_Z()));
  }
}

TEST(MonomerLaw, RejectsBadSize) {
  EXPECT_THROW(ex::MonomerLaw(0, ModelParams(0.0, 0.0)), imd::DomainError);
}

TEST(LogPartition, MatchesBruteForce) {
  for (int N = 1; N <= 8; ++N) {
    for (double h : {-1.0, 0.0, 1.0, 2.5}) {
      for (double J : {0.0, 1.0, 2.0, 4.0}) {
        const ModelParams p(h, J);
        EXPECT_NEAR(ex::log_partition(N, p), imd::verify::brute_force_log_partition(N, p), 1e-12)
            << "N=" << N << " h=" << h << " J=" << J;
      }
    }
  }
}

TEST(Pressure, Values) {
  EXPECT_NEAR(ex::pressure(2, ModelParams(0.0, 0.0)), 0.5 * std::log(1.5), 1e-15);
  EXPECT_NEAR(ex::pressure(10000, ModelParams(0.0, 0.0)), oracle::p0_0, 2e-3);
  // All-monomer dominance for a large field.
  EXPECT_NEAR(ex::pressure(100, ModelParams(20.0, 0.0)), 20.0, 1e-6);
}

TEST(Mgf, ZeroArgumentIsOne) {
  for (double J : {0.0, 1.5}) {
    EXPECT_NEAR(ex::mgf(50, ModelParams(0.2, J), 0.5, 0.3, 0.0), 1.0, 1e-14);
  }
}

TEST(Mgf, RoutesAgreeAtZeroCoupling) {
  const ModelParams p(0.0, 0.0);
  const double a = ex::mgf_ratio(100, p, 1.0, 0.0, 1.0);
  const double b = ex::mgf_direct(100, p, 1.0, 0.0, 1.0);
  EXPECT_NEAR(a, b, 1e-12 * b);
  for (double t : {-2.0, -0.3, 0.7, 3.0}) {
    for (double eta : {0.5, 1.0}) {
      const ModelParams q(-0.4, 0.0);
      EXPECT_NEAR(ex::mgf_ratio(64, q, eta, 0.1, t), ex::mgf_direct(64, q, eta, 0.1, t),
                  1e-12 * ex::mgf_direct(64, q, eta, 0.1, t));
    }
  }
  EXPECT_THROW(ex::mgf_ratio(10, ModelParams(0.0, 1.0), 1.0, 0.0, 1.0), imd::DomainError);
}

TEST(Mgf, LawOfLargeNumbersLimit) {
  EXPECT_NEAR(ex::mgf(10000, ModelParams(0.0, 0.0), 1.0, 0.0, 1.0), std::exp(oracle::g0), 1e-2);
}

TEST(Mgf, OverflowIsReported) {
  EXPECT_THROW(ex::mgf(1000, ModelParams(0.0, 0.0), 0.0, 0.0, 10.0), imd::OverflowError);
  EXPECT_THROW(ex::mgf(1000, ModelParams(0.0, 1.0), 0.0, 0.0, 10.0), imd::OverflowError);
}

TEST(MeanDensity, Values) {
  EXPECT_NEAR(ex::mean_density(2, ModelParams(0.0, 0.0)), 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(ex::mean_density(4, ModelParams(0.0, 0.0)), (4 * 1.0 + 2 * 1.5) / 4 / 2.6875,
              1e-15);
  EXPECT_NEAR(ex::mean_density(10000, ModelParams(0.0, 0.0)), oracle::g0, 5e-3);
}

TEST(P0NDerivative, CumulantsMatchFiniteDifferences) {
  for (int N : {10, 200}) {
    for (double h : {-1.0, 0.0, 0.8}) {
      const double s = 1e-3;
      auto p = [&](double x) { return ex::pressure(N, ModelParams(x, 0.0)); };
      EXPECT_DOUBLE_EQ(ex::p0N_derivative(N, h, 0), p(h));
      EXPECT_NEAR(ex::p0N_derivative(N, h, 1), (p(h + s) - p(h - s)) / (2 * s), 1e-5);
      EXPECT_NEAR(ex::p0N_derivative(N, h, 2), (p(h + s) - 2 * p(h) + p(h - s)) / (s * s), 1e-5);
    }
  }
}

TEST(P0NDerivative, ConvergeToLimit) {
  EXPECT_NEAR(ex::p0N_derivative(1000, 0.0, 1), oracle::g0, 1e-2);
  EXPECT_NEAR(ex::p0N_derivative(1000, 0.0, 2), oracle::g_prime0, 2e-2);
  EXPECT_THROW(ex::p0N_derivative(10, 0.0, 5), imd::DomainError);
}

double normal_pdf(double x, double variance) {
  return std::exp(-x * x / (2 * variance)) / std::sqrt(2 * std::numbers::pi * variance);
}

TEST(Convolution, TwoAtomMixtureByHand) {
  const auto d = ex::convolution_density(2, ModelParams(0.0, 1.0), {0.0, 0.0, 1.0});
  // At J = 1 the atoms S/N = 1 and 0 keep the J = 0 weights 2/3 and 1/3.
  const double expected = 2.0 / 3.0 * normal_pdf(0.0, 0.25) + 1.0 / 3.0 * normal_pdf(1.0, 0.25);
  EXPECT_NEAR(d.mixture, expected, 1e-14);
  EXPECT_NEAR(d.analytic, expected, 1e-12);
}

TEST(Convolution, AnalyticEqualsMixture) {
  for (double x = -1.0; x <= 2.0; x += 0.015) {
    const auto d = ex::convolution_density(4, ModelParams(0.0, 1.0), {0.0, 0.0, x});
    EXPECT_NEAR(d.analytic, d.mixture, 1e-8 * d.mixture) << "x=" << x;
  }
}

TEST(Convolution, IntegratesToOne) {
  for (double eta : {0.0, 0.25, 0.5}) {
    const ModelParams p(0.1, 1.3);
    // Trapezoid on a fine grid is spectrally accurate for this smooth, decaying density.
    const double lo = -8.0, hi = 8.0;
    const int n = 8000;
    double total = 0.0;
    for (int i = 0; i <= n; ++i) {
      const double x = lo + (hi - lo) * i / n;
      const double w = (i == 0 || i == n) ? 0.5 : 1.0;
      total += w * ex::convolution_density(20, p, {eta, 0.7, x}).mixture;
    }
    EXPECT_NEAR(total * (hi - lo) / n, 1.0, 1e-8) << "eta=" << eta;
  }
}

TEST(Convolution, RejectsZeroCoupling) {
  EXPECT_THROW(ex::convolution_density(4, ModelParams(0.0, 0.0), {}), imd::DomainError);
  EXPECT_THROW(ex::convolution_density(4, ModelParams(0.0, 1.0), {-0.5, 0.0, 0.0}),
               imd::DomainError);
}

TEST(LogSumExp, Basics) {
  const std::vector<double> v{1000.0, 1000.0};
  EXPECT_NEAR(ex::log_sum_exp(v), 1000.0 + std::log(2.0), 1e-12);
  EXPECT_EQ(ex::log_sum_exp(std::vector<double>{}), -INFINITY);
  EXPECT_EQ(ex::log_sum_exp(std::vector<double>{-INFINITY, -INFINITY}), -INFINITY);
}

}  // namespace
