#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "relilat/lifetimes.hpp"

using namespace relilat;

namespace {

JointLifetimeModel iid_exponential(int n, double rate) {
  return JointLifetimeModel::independent(std::vector<MarginalLifetime>(n, MarginalLifetime::exponential(rate)));
}

std::vector<LifetimeAtom> random_atoms(std::mt19937_64& rng, int n, int count) {
  static const double grid[] = {0.0, 0.5, 1.0, 1.5, 2.0, 3.0, kInf};
  std::uniform_int_distribution<int> pick(0, 6);
  std::vector<LifetimeAtom> atoms;
  for (int k = 0; k < count; ++k) {
    LifetimeAtom a{std::vector<double>(n), 1.0 / count};
    for (double& t : a.times) t = grid[pick(rng)];
    atoms.push_back(a);
  }
  return atoms;
}

}  // namespace

TEST(Marginal, Validation) {
  EXPECT_THROW(MarginalLifetime::exponential(0.0), DomainError);
  EXPECT_THROW(MarginalLifetime::weibull(1.0, -1.0), DomainError);
  EXPECT_THROW(MarginalLifetime::piecewise({{0, 1}, {1, 0.5}}), DomainError);  // defective
  EXPECT_THROW(MarginalLifetime::piecewise({{0, 1}, {1, 0.5}, {1, 0}}), DomainError);
  EXPECT_THROW(MarginalLifetime::piecewise({{0, 1}, {1, 0.5}, {2, 0.7}, {3, 0}}), DomainError);
}

TEST(Marginal, SurvivalValues) {
  EXPECT_DOUBLE_EQ(MarginalLifetime::exponential(2.0).survival(1.0), std::exp(-2.0));
  EXPECT_DOUBLE_EQ(MarginalLifetime::weibull(2.0, 3.0).survival(3.0), std::exp(-1.0));
  const MarginalLifetime e = MarginalLifetime::piecewise({{1, 0.6}, {3, 0}});
  EXPECT_DOUBLE_EQ(e.survival(0.5), 0.8);
  EXPECT_DOUBLE_EQ(e.survival(2.0), 0.3);
  EXPECT_EQ(e.survival(5.0), 0.0);
  EXPECT_EQ(e.kinks(), (std::vector<double>{1.0, 3.0}));
}

TEST(Marginal, InverseSurvival) {
  const MarginalLifetime e = MarginalLifetime::piecewise({{1, 0.6}, {3, 0}});
  for (double u : {0.1, 0.3, 0.6, 0.9}) EXPECT_NEAR(e.survival(e.inverse_survival(u)), u, 1e-15);
  const MarginalLifetime w = MarginalLifetime::weibull(1.5, 2.0);
  for (double u : {0.01, 0.5, 0.99}) EXPECT_NEAR(w.survival(w.inverse_survival(u)), u, 1e-14);
}

TEST(Joint, IndependentExponentialSurvival) {
  const JointLifetimeModel j = JointLifetimeModel::independent(
      {MarginalLifetime::exponential(0.5), MarginalLifetime::exponential(1.0), MarginalLifetime::exponential(2.5)});
  for (double t : {0.0, 0.3, 1.0, 4.0})
    EXPECT_NEAR(j.joint_survival(std::vector<double>(3, t)), std::exp(-4.0 * t), 1e-15);
  EXPECT_EQ(j.joint_cdf(std::vector<double>(3, kInf)), 1.0);
  const JointLifetimeModel two = iid_exponential(2, 1.0);
  EXPECT_NEAR(two.joint_cdf(std::vector<double>(2, std::log(2.0))), 0.25, 1e-15);
}

TEST(Joint, SingleAtom) {
  const JointLifetimeModel j = JointLifetimeModel::discrete_joint({{{1.0, 2.0}, 1.0}});
  EXPECT_EQ(j.joint_survival(std::vector<double>{0.5, 1.5}), 1.0);
  EXPECT_EQ(j.joint_survival(std::vector<double>{1.5, 1.5}), 0.0);
  EXPECT_EQ(j.joint_cdf(std::vector<double>{1.0, 2.0}), 1.0);
  Rng rng(3);
  for (int k = 0; k < 10; ++k) EXPECT_EQ(j.draw(rng), (std::vector<double>{1.0, 2.0}));
}

TEST(Joint, DiscreteValidation) {
  EXPECT_THROW(JointLifetimeModel::discrete_joint({{{1.0}, 0.5}}), DomainError);
  EXPECT_THROW(JointLifetimeModel::discrete_joint({{{1.0}, 0.5}, {{1.0, 2.0}, 0.5}}), DimensionMismatch);
  EXPECT_THROW(JointLifetimeModel::discrete_joint({{{-1.0}, 1.0}}), DomainError);
}

TEST(Joint, ContinuousModelsSurviveTimeZero) {
  const JointLifetimeModel a = iid_exponential(3, 1.0);
  const JointLifetimeModel b = JointLifetimeModel::comonotone(
      {MarginalLifetime::weibull(2, 1), MarginalLifetime::piecewise({{2, 0}}), MarginalLifetime::exponential(3)});
  EXPECT_EQ(a.joint_survival(std::vector<double>(3, 0.0)), 1.0);
  EXPECT_EQ(b.joint_survival(std::vector<double>(3, 0.0)), 1.0);
}

TEST(Pgf, TotalProbabilityAndFactorisation) {
  std::mt19937_64 rng(1);
  const JointLifetimeModel j = JointLifetimeModel::independent(
      {MarginalLifetime::exponential(0.7), MarginalLifetime::weibull(2, 1.3), MarginalLifetime::piecewise({{2, 0}}),
       MarginalLifetime::exponential(0.2)});
  for (double t : {0.2, 0.9, 1.7}) {
    EXPECT_NEAR(j.pgf(std::vector<double>(4, 1.0), t), 1.0, 1e-15);
    const std::vector<double> z = oracle::random_point(rng, 4, -1.0, 1.0);
    double product = 1.0;
    for (int i = 0; i < 4; ++i) product *= (1.0 - j.marginal_survival(i, t)) + z[i] * j.marginal_survival(i, t);
    // Σ_A Pr(X = e_A) Π_{i∈A} z_i from the state vector distribution.
    const StateVectorDistribution d = j.state_vector_dist(t);
    double by_states = 0.0;
    for (Mask a = 0; a < 16; ++a) {
      double zp = 1.0;
      for (int i = 0; i < 4; ++i)
        if (a >> i & 1) zp *= z[i];
      by_states += d.probs[a] * zp;
    }
    EXPECT_NEAR(j.pgf(z, t), product, 1e-14);
    EXPECT_NEAR(by_states, product, 1e-14);
  }
  EXPECT_THROW(j.pgf(std::vector<double>{2, 0, 0, 0}, 1.0), DomainError);
}

TEST(Pgf, IndicatorArgumentGivesJointCdf) {
  std::mt19937_64 rng(2);
  const std::vector<LifetimeAtom> atoms = random_atoms(rng, 4, 9);
  const JointLifetimeModel j = JointLifetimeModel::discrete_joint(atoms);
  const double t = 1.0;
  for (Mask a = 0; a < 16; ++a) {
    std::vector<double> z(4);
    std::vector<double> point(4);
    for (int i = 0; i < 4; ++i) {
      z[i] = (a >> i & 1) ? 0.0 : 1.0;
      point[i] = (a >> i & 1) ? t : kInf;
    }
    EXPECT_NEAR(j.pgf(z, t), j.joint_cdf(point), 1e-15) << format_subset(a);
    EXPECT_NEAR(j.cdf_on(a, t), j.joint_cdf(point), 1e-15);
  }
}

TEST(StateVector, IidFactorisation) {
  const JointLifetimeModel j = iid_exponential(4, 0.5);
  const double t = 1.3;
  const double p = std::exp(-0.5 * t);
  const StateVectorDistribution d = j.state_vector_dist(t);
  for (Mask a = 0; a < 16; ++a)
    EXPECT_NEAR(d.probs[a], std::pow(p, cardinality(a)) * std::pow(1 - p, 4 - cardinality(a)), 1e-15);
}

TEST(StateVector, ComonotonePair) {
  const JointLifetimeModel j = JointLifetimeModel::comonotone(std::vector<MarginalLifetime>(2, MarginalLifetime::exponential(1)));
  const double t = 0.8;
  const StateVectorDistribution d = j.state_vector_dist(t);
  EXPECT_NEAR(d.probs[0b11], std::exp(-t), 1e-15);
  EXPECT_NEAR(d.probs[0b00], 1 - std::exp(-t), 1e-15);
  EXPECT_NEAR(d.probs[0b01], 0.0, 1e-15);
  EXPECT_NEAR(d.probs[0b10], 0.0, 1e-15);
}

TEST(StateVector, TwoAtoms) {
  const JointLifetimeModel j = JointLifetimeModel::discrete_joint({{{1, 3}, 0.5}, {{3, 1}, 0.5}});
  const StateVectorDistribution d = j.state_vector_dist(2.0);
  EXPECT_NEAR(d.probs[0b01], 0.5, 1e-15);
  EXPECT_NEAR(d.probs[0b10], 0.5, 1e-15);
  EXPECT_NEAR(d.probs[0b00] + d.probs[0b11], 0.0, 1e-15);
}

TEST(StateVector, TiesCountAsFailed) {
  const JointLifetimeModel j = JointLifetimeModel::discrete_joint({{{2, 3}, 1.0}});
  const StateVectorDistribution d = j.state_vector_dist(2.0);
  EXPECT_NEAR(d.probs[0b10], 1.0, 1e-15);
}

TEST(StateVector, MobiusRouteMatchesAtomClassification) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 6;
    const std::vector<LifetimeAtom> atoms = random_atoms(rng, n, 1 + trial % 7);
    const JointLifetimeModel j = JointLifetimeModel::discrete_joint(atoms);
    for (double t : {0.0, 0.5, 0.75, 1.0, 2.5, 4.0}) {
      const std::vector<double> expected = oracle::atom_state_probs(atoms, n, t);
      const StateVectorDistribution d = j.state_vector_dist(t);
      for (Mask a = 0; a < expected.size(); ++a) EXPECT_NEAR(d.probs[a], expected[a], 1e-12);
    }
  }
}

TEST(StateVector, MarginalConsistency) {
  std::mt19937_64 rng(4);
  const std::vector<JointLifetimeModel> models = {
      JointLifetimeModel::independent({MarginalLifetime::exponential(1), MarginalLifetime::weibull(0.7, 2),
                                       MarginalLifetime::piecewise({{1, 0.5}, {2, 0}})}),
      JointLifetimeModel::comonotone({MarginalLifetime::exponential(1), MarginalLifetime::weibull(0.7, 2),
                                      MarginalLifetime::piecewise({{1, 0.5}, {2, 0}})}),
      JointLifetimeModel::discrete_joint(random_atoms(rng, 3, 5)),
  };
  for (const JointLifetimeModel& j : models)
    for (double t : {0.0, 0.4, 1.0, 1.5, 3.0}) {
      const StateVectorDistribution d = j.state_vector_dist(t);
      double total = 0.0;
      for (Mask a = 0; a < 8; ++a) {
        EXPECT_GE(d.probs[a], 0.0);
        total += d.probs[a];
      }
      EXPECT_NEAR(total, 1.0, 1e-12);
      for (int i = 0; i < 3; ++i) {
        double marginal = 0.0;
        for (Mask a = 0; a < 8; ++a)
          if (a >> i & 1) marginal += d.probs[a];
        EXPECT_NEAR(marginal, j.marginal_survival(i, t), 1e-12);
      }
    }
}

TEST(Sampling, ExponentialTailFrequency) {
  const JointLifetimeModel j = iid_exponential(1, 1.0);
  const auto samples = sample_lifetimes(j, 42, 100000);
  double hits = 0;
  for (const auto& s : samples) hits += s[0] > 1.0;
  const double p = std::exp(-1.0);
  const double sigma = std::sqrt(p * (1 - p) / samples.size());
  EXPECT_LT(std::abs(hits / samples.size() - p), 3 * sigma);
}

TEST(Sampling, DeterministicGivenSeed) {
  const JointLifetimeModel j = JointLifetimeModel::comonotone({MarginalLifetime::exponential(1), MarginalLifetime::weibull(2, 1)});
  EXPECT_EQ(sample_lifetimes(j, 9, 500), sample_lifetimes(j, 9, 500));
  EXPECT_NE(sample_lifetimes(j, 9, 500), sample_lifetimes(j, 10, 500));
  for (const auto& s : sample_lifetimes(j, 9, 200))
    EXPECT_NEAR(MarginalLifetime::exponential(1).survival(s[0]), MarginalLifetime::weibull(2, 1).survival(s[1]), 1e-12);
}
