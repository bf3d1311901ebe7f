#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "relilat/quadrature.hpp"
#include "relilat/reliability.hpp"

using namespace relilat;

namespace {

JointLifetimeModel exponentials(std::vector<double> rates) {
  std::vector<MarginalLifetime> m;
  for (double r : rates) m.push_back(MarginalLifetime::exponential(r));
  return JointLifetimeModel::independent(std::move(m));
}

std::vector<Formula> applicable(const JointLifetimeModel& j) {
  std::vector<Formula> out;
  for (Formula f : all_formulas())
    if (f.route != Route::IndependentMle || j.is_independent()) out.push_back(f);
  return out;
}

}  // namespace

TEST(Formulas, NamesRoundTrip) {
  for (Formula f : all_formulas()) EXPECT_EQ(parse_formula(to_string(f)), f) << to_string(f);
  EXPECT_EQ(to_string(Formula{Route::IndependentMle, FormTag::DisjunctiveNormal}), "mle-dnf");
  EXPECT_FALSE(parse_formula("mle-banana"));
}

TEST(Query, Validation) {
  EXPECT_THROW(ReliabilityQuery(make_series(2), exponentials({1, 1, 1})), DimensionMismatch);
  const JointLifetimeModel dependent = JointLifetimeModel::discrete_joint({{{1, 2}, 1.0}});
  EXPECT_THROW(ReliabilityQuery(make_series(2), dependent, Formula{Route::IndependentMle}), ModelMismatch);
  EXPECT_EQ(ReliabilityQuery(make_series(2), dependent).resolved_formula().route, Route::MobiusSurvival);
  EXPECT_EQ(ReliabilityQuery(make_series(2), exponentials({1, 1})).resolved_formula(),
            (Formula{Route::IndependentMle, FormTag::PrimalMobius}));
  EXPECT_THROW(reliability_at(ReliabilityQuery(make_series(2), exponentials({1, 1})), -1.0), DomainError);
}

TEST(Reliability, SeriesOfExponentials) {
  const ReliabilityQuery q(make_series(3), exponentials({0.5, 1.0, 2.0}));
  for (double t : {0.0, 0.1, 1.0, 3.0})
    for (Formula f : all_formulas()) EXPECT_NEAR(reliability_at(q.with_formula(f), t), std::exp(-3.5 * t), 1e-15);
}

TEST(Reliability, TwoOutOfThreeIid) {
  const ReliabilityQuery q(make_kofn(3, 2), exponentials({1, 1, 1}));
  for (double t : {0.2, 0.7, 2.0}) {
    const double p = std::exp(-t);
    for (Formula f : all_formulas())
      EXPECT_NEAR(reliability_at(q.with_formula(f), t), 3 * p * p - 2 * p * p * p, 1e-15) << to_string(f);
  }
}

TEST(Reliability, KOutOfNIsBinomialTail) {
  for (int n = 1; n <= 7; ++n)
    for (int k = 1; k <= n; ++k) {
      const ReliabilityQuery q(make_kofn(n, k), exponentials(std::vector<double>(n, 0.8)));
      for (double t : {0.3, 1.1}) {
        const double p = std::exp(-0.8 * t);
        EXPECT_NEAR(reliability_at(q, t), oracle::binomial_tail(n, k, p), 1e-13);
      }
    }
}

TEST(Reliability, ComonotoneParallel) {
  const JointLifetimeModel j = JointLifetimeModel::comonotone(std::vector<MarginalLifetime>(2, MarginalLifetime::exponential(1)));
  const ReliabilityQuery q(make_parallel(2), j);
  for (double t : {0.1, 0.5, 2.0})
    for (Formula f : applicable(j)) EXPECT_NEAR(reliability_at(q.with_formula(f), t), std::exp(-t), 1e-15);
}

TEST(Reliability, BridgeAtHalf) {
  // Components with survival exactly 1/2 at t = ln 2.
  const ReliabilityQuery q(make_bridge(), exponentials(std::vector<double>(5, 1.0)));
  EXPECT_NEAR(reliability_at(q, std::log(2.0)), 0.5, 1e-15);
}

TEST(Reliability, PositiveEmptyWeightKeepsSystemAlive) {
  RealSetFunction w(2, {2.0, 2.0, 2.0, 5.0});
  const ReliabilityQuery q(WeightedLatticePolynomial(w), exponentials({1, 1}));
  for (double t : {0.0, 1.0, 1.99}) EXPECT_EQ(reliability_at(q, t), 1.0);
  EXPECT_NEAR(reliability_at(q, 3.0), std::exp(-6.0), 1e-15);
  EXPECT_EQ(reliability_at(q, 5.0), 0.0);
  for (Formula f : all_formulas()) {
    EXPECT_NEAR(reliability_at(q.with_formula(f), 1.0), 1.0, 1e-15) << to_string(f);
    EXPECT_NEAR(reliability_at(q.with_formula(f), 6.0), 0.0, 1e-15) << to_string(f);
  }
}

TEST(Reliability, RightContinuousAtBreakpoints) {
  // Single component capped at u = 2: alive at t iff T > t and t < 2.
  const ReliabilityQuery q(make_weighted_max(std::vector<double>{2.0}), exponentials({1}));
  EXPECT_NEAR(reliability_at(q, std::nextafter(2.0, 0.0)), std::exp(-2.0), 1e-15);
  EXPECT_EQ(reliability_at(q, 2.0), 0.0);
}

TEST(Reliability, RoutesAgreeAcrossModels) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 1 + trial % 6;
    const WeightedLatticePolynomial p(trial % 2 ? oracle::random_weights(rng, n)
                                                : lp_from_structure(SystemStructure(oracle::random_structure(rng, n))).weights());
    std::vector<MarginalLifetime> marginals;
    for (int i = 0; i < n; ++i)
      marginals.push_back(i % 3 == 0   ? MarginalLifetime::exponential(0.5 + i)
                          : i % 3 == 1 ? MarginalLifetime::weibull(1.5, 2.0)
                                       : MarginalLifetime::piecewise({{1, 0.7}, {4, 0}}));
    std::vector<LifetimeAtom> atoms;
    for (int k = 0; k < 5; ++k) atoms.push_back({oracle::random_point(rng, n, 0.0, 4.0), 0.2});
    const std::vector<JointLifetimeModel> models = {JointLifetimeModel::independent(marginals),
                                                    JointLifetimeModel::comonotone(marginals),
                                                    JointLifetimeModel::discrete_joint(atoms)};
    for (const JointLifetimeModel& j : models) {
      const ReliabilityQuery q(p, j);
      for (double t : {0.0, 0.25, 0.6, 1.0, 1.5, 2.2, 3.5}) {
        const double reference = reliability_at(q.with_formula({Route::StateVector}), t);
        for (Formula f : applicable(j)) EXPECT_NEAR(reliability_at(q.with_formula(f), t), reference, 1e-10);
        for (DistributionRoute r : kAllDistributionRoutes) {
          const bool independent_only = r >= DistributionRoute::IndependentStateVector;
          if (independent_only && !j.is_independent()) {
            EXPECT_THROW(wlp_distribution_at(p, j, t, r), ModelMismatch);
            continue;
          }
          EXPECT_NEAR(wlp_distribution_at(p, j, t, r) + reference, 1.0, 1e-12);
        }
      }
      if (std::holds_alternative<JointLifetimeModel::DiscreteJoint>(j.kind())) {
        for (double t : {0.3, 1.2, 2.9}) EXPECT_NEAR(reliability_at(q, t), oracle::atom_reliability(p.weights(), atoms, t), 1e-12);
      }
    }
  }
}

TEST(Reliability, WeightedMinMaxClosedForms) {
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 5;
    const std::vector<double> bounds = oracle::random_point(rng, n, 0.0, 2.0);
    std::vector<double> rates = oracle::random_point(rng, n, 0.2, 2.0);
    const JointLifetimeModel j = exponentials(rates);
    const ReliabilityQuery qmin(make_weighted_min(bounds), j);
    const ReliabilityQuery qmax(make_weighted_max(bounds), j);
    for (double t : {0.1, 0.5, 1.0, 1.7}) {
      double series = 1.0;
      double parallel_fail = 1.0;
      for (int i = 0; i < n; ++i) {
        const double r = std::exp(-rates[i] * t);
        const double vi = bounds[i] > t ? 1.0 : 0.0;
        series *= 1.0 - (1.0 - vi) * (1.0 - r);  // v_t({i}) ∐ R_i(t)
        parallel_fail *= 1.0 - vi * r;
      }
      EXPECT_NEAR(reliability_at(qmin, t), series, 1e-12);
      EXPECT_NEAR(reliability_at(qmax, t), 1.0 - parallel_fail, 1e-12);
    }
  }
}

TEST(Curve, MatchesPointwiseAndIsNonincreasing) {
  std::mt19937_64 rng(3);
  std::vector<double> grid(100);
  for (int i = 0; i < 100; ++i) grid[i] = 0.04 * i;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 6;
    const WeightedLatticePolynomial p(oracle::random_weights(rng, n));
    const ReliabilityQuery q(p, exponentials(oracle::random_point(rng, n, 0.1, 2.0)));
    const ReliabilityReport report = reliability_curve(q, grid);
    ASSERT_EQ(report.values.size(), grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      EXPECT_EQ(report.values[i], reliability_at(q, grid[i]));
      if (i) EXPECT_LE(report.values[i], report.values[i - 1] + 1e-15);
    }
  }
}

TEST(Mttf, ExponentialClosedForms) {
  const MttfResult series = mttf(ReliabilityQuery(make_series(3), exponentials({0.5, 1.0, 2.5})));
  EXPECT_EQ(series.method, MttfMethod::ClosedFormExponential);
  EXPECT_NEAR(series.value, 0.25, 1e-15);
  const MttfResult parallel = mttf(ReliabilityQuery(make_parallel(2), exponentials({1.0, 3.0})));
  EXPECT_NEAR(parallel.value, 1.0 + 1.0 / 3.0 - 0.25, 1e-15);
  for (double lambda : {0.1, 1.0, 7.0}) {
    const ReliabilityQuery q(make_kofn(3, 2), exponentials({lambda, lambda, lambda}));
    EXPECT_NEAR(mttf(q).value, 5.0 / (6.0 * lambda), 1e-12 * (1.0 / lambda));
    EXPECT_NEAR(mttf_by_quadrature(q).value, 5.0 / (6.0 * lambda), 1e-6 * (1.0 / lambda));
  }
}

TEST(Mttf, CappedComponent) {
  for (double u : {0.5, 2.0, 10.0}) {
    const ReliabilityQuery q(make_weighted_max(std::vector<double>{u}), exponentials({1.5}));
    const double expected = -std::expm1(-1.5 * u) / 1.5;
    EXPECT_NEAR(mttf(q).value, expected, 1e-15);
    EXPECT_NEAR(mttf_by_quadrature(q).value, expected, 1e-9);
  }
}

TEST(Mttf, WeightedFormulaReducesToMobiusSum) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 1 + trial % 7;
    const SystemStructure s(oracle::random_structure(rng, n));
    const std::vector<double> rates = oracle::random_point(rng, n, 0.1, 10.0);
    EXPECT_EQ(mttf_exponential_weighted(lp_from_structure(s), rates), mttf_exponential_mobius(s.mobius(), rates));
  }
}

TEST(Mttf, QuadratureMatchesClosedFormOnWeightedSystems) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 1 + trial % 5;
    const WeightedLatticePolynomial p(oracle::random_weights(rng, n, false));
    const ReliabilityQuery q(p, exponentials(oracle::random_point(rng, n, 0.1, 10.0)));
    const MttfResult closed = mttf(q);
    EXPECT_EQ(closed.method, MttfMethod::ClosedFormExponential);
    EXPECT_NEAR(mttf_by_quadrature(q).value, closed.value, 1e-6 * std::max(1.0, closed.value));
  }
}

TEST(Mttf, DiscreteAndEmpiricalModels) {
  const JointLifetimeModel atoms = JointLifetimeModel::discrete_joint({{{1, 2}, 0.5}, {{3, 0.5}, 0.5}});
  const MttfResult r = mttf(ReliabilityQuery(make_parallel(2), atoms));
  EXPECT_EQ(r.method, MttfMethod::PiecewiseQuadrature);
  EXPECT_NEAR(r.value, 0.5 * 2 + 0.5 * 3, 1e-9);
  const JointLifetimeModel tri = JointLifetimeModel::independent({MarginalLifetime::piecewise({{2, 0}})});
  EXPECT_NEAR(mttf(ReliabilityQuery(make_series(1), tri)).value, 1.0, 1e-9);
}

TEST(Mttf, InfiniteLifetimes) {
  RealSetFunction w(1, {kInf, kInf});
  EXPECT_EQ(mttf(ReliabilityQuery(WeightedLatticePolynomial(w), exponentials({1}))).value, kInf);
}

TEST(Distribution, Examples) {
  const JointLifetimeModel one = exponentials({0.7});
  const WeightedLatticePolynomial identity = lp_from_structure(make_series(1));
  const WeightedLatticePolynomial both_min = lp_from_structure(make_series(2));
  for (double t : {0.0, 0.4, 2.0}) {
    for (DistributionRoute r : kAllDistributionRoutes) {
      EXPECT_NEAR(wlp_distribution_at(identity, one, t, r), -std::expm1(-0.7 * t), 1e-15);
      EXPECT_NEAR(wlp_distribution_at(both_min, exponentials({0.7, 1.1}), t, r), -std::expm1(-1.8 * t), 1e-15);
    }
  }
}

TEST(Symmetric, ReliabilityAgreesWithGenericRoute) {
  const SymmetricProfile profile({0.0, 1.0, 2.0, kInf});
  const JointLifetimeModel j = exponentials({0.5, 1.0, 1.5});
  const WeightedLatticePolynomial p = make_symmetric(profile);
  for (double t : {0.0, 0.5, 1.0, 1.5, 2.0, 3.0}) {
    EXPECT_NEAR(symmetric_reliability_at(profile, j, t), reliability_at(ReliabilityQuery(p, j), t), 1e-14);
    EXPECT_NEAR(wlp_distribution_at(p, j, t), 1.0 - symmetric_reliability_at(profile, j, t), 1e-14);
  }
  // k(1.5) = 2
  const StateVectorDistribution d = j.state_vector_dist(1.5);
  double at_least_two = 0.0;
  for (Mask a = 0; a < 8; ++a)
    if (cardinality(a) >= 2) at_least_two += d.probs[a];
  EXPECT_NEAR(symmetric_reliability_at(profile, j, 1.5), at_least_two, 1e-14);
}

TEST(Symmetric, KOutOfNProfileIsBinomialTail) {
  const SymmetricProfile profile({0, 0, 0, kInf, kInf});
  const JointLifetimeModel j = exponentials(std::vector<double>(4, 1.0));
  const double p = std::exp(-0.6);
  EXPECT_NEAR(symmetric_reliability_at(profile, j, 0.6), oracle::binomial_tail(4, 3, p), 1e-14);
  EXPECT_EQ(symmetric_reliability_at(SymmetricProfile({0, 1, 2}), exponentials({1, 1}), 2.0), 0.0);
}

TEST(Quadrature, KnownIntegrals) {
  const QuadratureResult sine = integrate([](double x) { return std::sin(x); }, 0.0, M_PI, 1e-12, 100);
  EXPECT_NEAR(sine.value, 2.0, 1e-12);
  const QuadratureResult sqrt = integrate([](double x) { return std::sqrt(x); }, 0.0, 1.0, 1e-10, 1000);
  EXPECT_NEAR(sqrt.value, 2.0 / 3.0, 1e-10);
  const QuadratureResult tail = integrate_to_infinity([](double x) { return std::exp(-2 * x); }, 1.0, 1e-12, 1000);
  EXPECT_NEAR(tail.value, std::exp(-2.0) / 2, 1e-12);
}

TEST(Quadrature, Failures) {
  EXPECT_THROW(integrate([](double x) { return 1.0 / std::sqrt(std::abs(x - 0.3)) * std::sin(1 / (x - 0.3)); }, 0, 1,
                         1e-14, 5),
               NonconvergenceError);
  EXPECT_THROW(integrate_to_infinity([](double x) { return 1.0 / (1.0 + x); }, 0.0, 1e-9, 1000), NonconvergenceError);
}
