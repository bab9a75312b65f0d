#include <gtest/gtest.h>

#include <cmath>

#include "imd/error.hpp"
#include "imd/exact.hpp"
#include "imd/limits.hpp"
#include "imd/phase.hpp"
#include "imd/thermo.hpp"
#include "oracle_values.hpp"

namespace {

using imd::ModelParams;
namespace lm = imd::limits;

TEST(ScaledLaw, DensityScaling) {
  const ModelParams p(0.0, 0.0);
  const auto law = lm::scaled_law(4, p, 1.0, 0.0);
  const imd::exact::MonomerLaw raw(4, p);
  ASSERT_EQ(law.atoms().size(), 3u);
  const double pos[] = {0.0, 0.5, 1.0};
  for (int i = 0; i < 3; ++i) {
    EXPECT_DOUBLE_EQ(law.atoms()[i].position, pos[i]);
    // Bit-identical probabilities, reordered by position.
    EXPECT_EQ(law.atoms()[i].probability, raw.probabilities()[2 - i]);
  }
  EXPECT_NEAR(law.mean(), imd::exact::mean_density(4, p), 1e-15);
}

TEST(ScaledLaw, IdentityScaling) {
  const auto law = lm::scaled_law(7, ModelParams(0.3, 1.0), 0.0, 0.0);
  const double S[] = {1, 3, 5, 7};
  for (int i = 0; i < 4; ++i) EXPECT_EQ(law.atoms()[i].position, S[i]);
}

TEST(ScaledLaw, AffineConsistency) {
  const int N = 1001;
  const double eta = 0.75, u = 0.42;
  const auto law = lm::scaled_law(N, ModelParams(-0.2, 1.1), eta, u);
  const double scale = std::pow(N, eta);
  for (std::size_t i = 0; i < law.atoms().size(); ++i) {
    const double S = 1 + 2 * static_cast<double>(i);
    EXPECT_EQ(law.atoms()[i].position, (S - N * u) / scale);
  }
  EXPECT_THROW(lm::scaled_law(10, ModelParams(0.0, 0.0), -1.0, 0.0), imd::DomainError);
}

TEST(LimitCdf, Gaussian) {
  const lm::Gaussian z{0.0, 1.0};
  EXPECT_NEAR(lm::limit_cdf(z, 1.959964), 0.975, 1e-6);
  EXPECT_DOUBLE_EQ(lm::limit_cdf(z, 0.0), 0.5);
  EXPECT_THROW(lm::limit_cdf(lm::Gaussian{0.0, 0.0}, 0.0), imd::DomainError);
}

TEST(LimitCdf, PointMassAndMixtureJumps) {
  EXPECT_EQ(lm::limit_cdf(lm::PointMass{0.0}, 0.0), 1.0);
  EXPECT_EQ(lm::limit_cdf_left(lm::PointMass{0.0}, 0.0), 0.0);
  const lm::Mixture mx{0.25, -1.0, 0.75, 2.0};
  EXPECT_EQ(lm::limit_cdf(mx, 0.0), 0.25);
  EXPECT_EQ(lm::limit_cdf_left(mx, 2.0), 0.25);
  EXPECT_EQ(lm::limit_cdf(mx, 2.0), 1.0);
  EXPECT_THROW(lm::validate(lm::Mixture{0.3, 0.0, 0.3, 1.0}), imd::DomainError);
  EXPECT_THROW(lm::validate(lm::Quartic{1.0}), imd::DomainError);
}

TEST(Quartic, SymmetryAndNormalization) {
  const lm::Quartic q{oracle::lambda_c};
  EXPECT_DOUBLE_EQ(lm::limit_cdf(q, 0.0), 0.5);
  for (double x = 0.05; x < 3.0; x += 0.173) {
    EXPECT_NEAR(lm::limit_cdf(q, -x), 1.0 - lm::limit_cdf(q, x), 1e-10);
    EXPECT_DOUBLE_EQ(lm::quartic_density(q, x), lm::quartic_density(q, -x));
  }
  const double a = std::abs(oracle::lambda_c) / 24.0;
  EXPECT_NEAR(lm::quartic_normalizer(q), std::pow(a, -0.25) * std::tgamma(0.25) / 2.0, 1e-12);
  EXPECT_NEAR(lm::quartic_variance(q), std::tgamma(0.75) / std::tgamma(0.25) / std::sqrt(a), 1e-8);

  // Midpoint rule on the density.
  double total = 0.0;
  const double h = 1e-3;
  for (double x = -4.0 + h / 2; x < 4.0; x += h) total += h * lm::quartic_density(q, x);
  EXPECT_NEAR(total, 1.0, 1e-10);
}

TEST(Quartic, CdfIsDensityIntegral) {
  const lm::Quartic q{-10.0};
  const double x = 0.8, s = 1e-5;
  EXPECT_NEAR((lm::limit_cdf(q, x + s) - lm::limit_cdf(q, x - s)) / (2 * s),
              lm::quartic_density(q, x), 1e-8);
}

TEST(KsDistance, TrivialCases) {
  // N = 2 at h -> large puts essentially all mass on S = 2.
  const auto law = lm::scaled_law(2, ModelParams(40.0, 0.0), 1.0, 0.0);
  EXPECT_NEAR(lm::ks_distance(law, lm::PointMass{1.0}), 0.0, 1e-15);
  EXPECT_NEAR(lm::ks_distance(law, lm::PointMass{0.0}), 1.0, 1e-15);
}

TEST(KsDistance, InteractingClt) {
  const ModelParams p(0.2, 0.5);
  const auto law = lm::scaled_law(10000, p, 0.5, oracle::m_star);
  EXPECT_LT(lm::ks_distance(law, lm::Gaussian{0.0, oracle::sigma2}), 0.05);
}

TEST(ConvergenceStudy, FreeCase) {
  const std::vector<int> Ns{100, 1000, 10000};
  const auto study = lm::convergence_study(ModelParams(0.0, 0.0), 0.5, oracle::g0,
                                           lm::Gaussian{0.0, oracle::g_prime0}, Ns);
  ASSERT_EQ(study.rows.size(), 3u);
  EXPECT_EQ(study.inversions, 0);
  EXPECT_TRUE(study.trend_ok);
  for (const auto& r : study.rows) EXPECT_TRUE(r.decreased);
  EXPECT_THROW(lm::convergence_study(ModelParams(0.0, 0.0), 0.5, 0.0, lm::PointMass{0.0},
                                     std::vector<int>{10, 10}),
               imd::DomainError);
}

TEST(ConvergenceStudy, CriticalScaling) {
  const auto cp = imd::phase::find_critical_point();
  const ModelParams p(cp.h_c, cp.J_c);
  const std::vector<int> Ns{1000, 10000};
  const auto study = lm::convergence_study(p, 0.75, cp.m_c, lm::Quartic{cp.lambda_c}, Ns);
  EXPECT_TRUE(study.trend_ok);
  EXPECT_LT(study.rows.back().ks, 0.1);
}

TEST(ConvergenceStudy, WrongScalingAtCriticalPointBreaksDown) {
  const auto cp = imd::phase::find_critical_point();
  const ModelParams p(cp.h_c, cp.J_c);
  // The sqrt(N)-scaled variance grows like sqrt(N), so no fixed Gaussian fits.
  const double v1 = lm::scaled_law(1000, p, 0.5, cp.m_c).variance();
  const double v2 = lm::scaled_law(16000, p, 0.5, cp.m_c).variance();
  EXPECT_NEAR(v2 / v1, 4.0, 2.0);
  const lm::Gaussian fixed{0.0, v1};
  EXPECT_GT(lm::ks_distance(lm::scaled_law(64000, p, 0.5, cp.m_c), fixed), 0.1);
}

TEST(LawOfLargeNumbers, TailMassShrinks) {
  for (const ModelParams& p : {ModelParams(0.0, 0.0), ModelParams(0.2, 0.5)}) {
    const double m = imd::phase::classify(p).maximizers.front();
    double prev = 2.0;
    for (int N : {100, 1000, 10000}) {
      const auto law = lm::scaled_law(N, p, 1.0, 0.0);
      double outside = 0.0;
      for (const auto& a : law.atoms()) {
        if (std::abs(a.position - m) >= 0.05) outside += a.probability;
      }
      EXPECT_LT(outside, prev);
      prev = outside;
    }
    EXPECT_LT(prev, 0.01);
  }
}

TEST(Coexistence, SingleGaussianFailsOnGamma) {
  const auto gp = imd::phase::gamma_point(2.0);
  const ModelParams p(gp.h, gp.J);
  const double centre = gp.rho1 * gp.m1 + gp.rho2 * gp.m2;
  for (int N : {1000, 10000}) {
    const auto law = lm::scaled_law(N, p, 0.5, centre);
    EXPECT_GT(lm::ks_distance(law, lm::Gaussian{law.mean(), law.variance()}), 0.05);
  }
}

TEST(Coexistence, BasinMassesApproachWeights) {
  const auto gp = imd::phase::gamma_point(2.0);
  double prev = 1.0;
  for (int N : {1000, 10000, 100000}) {
    const auto masses = lm::coexistence_masses(N, gp);
    EXPECT_EQ(masses.mass1 + masses.mass2, 1.0);
    const double gap = std::abs(masses.mass1 - gp.rho1);
    EXPECT_LT(gap, prev);
    prev = gap;
    EXPECT_LT(masses.mass1, masses.mass2);
  }
  EXPECT_LT(prev, 0.05);
  auto off = gp;
  off.h += 0.01;
  EXPECT_THROW(lm::coexistence_masses(1000, off), imd::DomainError);
}

}  // namespace
