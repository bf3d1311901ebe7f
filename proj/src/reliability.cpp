#include "relilat/reliability.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "relilat/numerics.hpp"
#include "relilat/quadrature.hpp"

namespace relilat {

namespace {

constexpr double kQuadratureTolerance = 1e-9;
constexpr int kQuadratureBudget = 10000;

void check_time(double t) {
  if (std::isnan(t) || t < 0.0) throw DomainError(fmt::format("time {} outside [0, inf]", t));
}

double clamp_probability(double p) { return std::clamp(p, 0.0, 1.0); }

void require_independent(const JointLifetimeModel& j, std::string_view what) {
  if (!j.is_independent())
    throw ModelMismatch(fmt::format("{} requires independent lifetimes", what));
}

std::vector<double> marginal_survivals(const JointLifetimeModel& j, double t) {
  std::vector<double> r(j.n());
  for (int i = 0; i < j.n(); ++i) r[i] = j.marginal_survival(i, t);
  return r;
}

// prod_{i ∈ A} x_i * prod_{i ∉ A} (1 - x_i) for every A.
std::vector<double> product_weights(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> w(std::size_t{1} << n);
  w[0] = 1.0;
  for (int i = 0; i < n; ++i) {
    const Mask half = Mask{1} << i;
    for (Mask a = 0; a < half; ++a) {
      w[a | half] = w[a] * x[i];
      w[a] *= 1.0 - x[i];
    }
  }
  return w;
}

// prod_{i ∈ A} x_i for every A.
std::vector<double> subset_products(std::span<const double> x) {
  std::vector<double> p(std::size_t{1} << x.size());
  p[0] = 1.0;
  for (Mask a = 1; a < p.size(); ++a) p[a] = p[a & (a - 1)] * x[std::countr_zero(a)];
  return p;
}

double rate_sum(Mask a, std::span<const double> rates) {
  double lambda = 0.0;
  for (Mask rest = a; rest != 0; rest &= rest - 1) lambda += rates[std::countr_zero(rest)];
  return lambda;
}

void check_rates(std::span<const double> rates, int n) {
  if (static_cast<int>(rates.size()) != n)
    throw DimensionMismatch(fmt::format("expected {} rates, got {}", n, rates.size()));
  for (double r : rates)
    if (!(r > 0.0) || !std::isfinite(r)) throw DomainError(fmt::format("rate {} is not positive", r));
}

}  // namespace

std::string to_string(Formula f) {
  switch (f.route) {
    case Route::Auto: return "auto";
    case Route::StateVector: return "statevec";
    case Route::StateVectorDual: return "statevec-dual";
    case Route::MobiusSurvival: return "mobius-survival";
    case Route::MobiusCdf: return "mobius-cdf";
    case Route::IndependentMle: return "mle-" + std::string(to_string(f.form));
  }
  return "?";
}

std::vector<Formula> all_formulas() {
  std::vector<Formula> out = {{Route::Auto},
                              {Route::StateVector},
                              {Route::StateVectorDual},
                              {Route::MobiusSurvival},
                              {Route::MobiusCdf}};
  for (FormTag form : kAllForms) out.push_back({Route::IndependentMle, form});
  return out;
}

std::optional<Formula> parse_formula(std::string_view name) {
  for (Formula f : all_formulas())
    if (to_string(f) == name) return f;
  return std::nullopt;
}

ReliabilityQuery::ReliabilityQuery(const SystemStructure& system, JointLifetimeModel lifetimes, Formula formula)
    : ReliabilityQuery(lp_from_structure(system), std::move(lifetimes), formula) {}

ReliabilityQuery::ReliabilityQuery(WeightedLatticePolynomial system, JointLifetimeModel lifetimes, Formula formula)
    : system_(std::move(system)), lifetimes_(std::move(lifetimes)), formula_(formula) {
  if (system_.n() != lifetimes_.n())
    throw DimensionMismatch(fmt::format("system has {} components but lifetime model has {}", system_.n(),
                                        lifetimes_.n()));
  if (formula_.route == Route::IndependentMle) require_independent(lifetimes_, to_string(formula_));
}

Formula ReliabilityQuery::resolved_formula() const {
  if (formula_.route != Route::Auto) return formula_;
  if (lifetimes_.is_independent()) return {Route::IndependentMle, FormTag::PrimalMobius};
  return {Route::MobiusSurvival};
}

double reliability_from_tables(const StructureTables& tables, const JointLifetimeModel& j, double t,
                               Formula formula) {
  check_time(t);
  if (tables.n() != j.n())
    throw DimensionMismatch(fmt::format("structure has {} components but lifetime model has {}", tables.n(), j.n()));
  const Mask full = full_mask(j.n());
  if (formula.route == Route::Auto)
    formula = j.is_independent() ? Formula{Route::IndependentMle, FormTag::PrimalMobius} : Formula{Route::MobiusSurvival};

  switch (formula.route) {
    case Route::StateVector: {
      const StateVectorDistribution dist = j.state_vector_dist(t);
      CompensatedSum r;
      for (Mask a = 0; a < dist.probs.size(); ++a)
        if (tables.v[a]) r += dist.probs[a];
      return clamp_probability(r.value());
    }
    case Route::StateVectorDual: {
      const StateVectorDistribution dist = j.state_vector_dist(t);
      CompensatedSum q;
      for (Mask a = 0; a < dist.probs.size(); ++a)
        if (tables.v_star[a]) q += dist.probs[full & ~a];
      return clamp_probability(1.0 - q.value());
    }
    case Route::MobiusSurvival: {
      CompensatedSum r;
      for (Mask a = 0; a < tables.m_v.size(); ++a)
        if (tables.m_v[a] != 0) r += static_cast<double>(tables.m_v[a]) * j.survival_on(a, t);
      return clamp_probability(r.value());
    }
    case Route::MobiusCdf: {
      CompensatedSum q;
      for (Mask a = 0; a < tables.m_v_star.size(); ++a)
        if (tables.m_v_star[a] != 0) q += static_cast<double>(tables.m_v_star[a]) * j.cdf_on(a, t);
      return clamp_probability(1.0 - q.value());
    }
    case Route::IndependentMle: {
      require_independent(j, to_string(formula));
      const std::vector<double> r = marginal_survivals(j, t);
      return clamp_probability(eval_mle(tables, r, formula.form));
    }
    case Route::Auto: break;
  }
  return 0.0;
}

double reliability_at(const ReliabilityQuery& q, double t) {
  const ThresholdStructure s = threshold_structure(q.system(), t);
  return reliability_from_tables(s.tables, q.lifetimes(), t, q.resolved_formula());
}

ReliabilityReport reliability_curve(const ReliabilityQuery& q, std::span<const double> grid, bool with_mttf) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    check_time(grid[i]);
    if (i > 0 && grid[i] < grid[i - 1]) throw DomainError("reliability grid must be sorted ascending");
  }
  const std::vector<double> breakpoints = q.system().breakpoints();
  const Formula formula = q.resolved_formula();

  ReliabilityReport report;
  report.grid.assign(grid.begin(), grid.end());
  report.values.reserve(grid.size());
  report.formula_used.assign(grid.size(), formula);

  // v_t is constant on [b_k, b_{k+1}); the interval index is the count of breakpoints <= t.
  std::optional<ThresholdStructure> cached;
  std::ptrdiff_t cached_interval = -1;
  for (double t : grid) {
    const auto interval = std::upper_bound(breakpoints.begin(), breakpoints.end(), t) - breakpoints.begin();
    if (!cached || interval != cached_interval) {
      cached = threshold_structure(q.system(), t);
      cached_interval = interval;
    }
    report.values.push_back(reliability_from_tables(cached->tables, q.lifetimes(), t, formula));
  }
  if (with_mttf) report.mttf = mttf(q);
  return report;
}

std::string_view to_string(MttfMethod m) {
  switch (m) {
    case MttfMethod::ClosedFormExponential: return "closed_form_exponential";
    case MttfMethod::PiecewiseQuadrature: return "piecewise_quadrature";
  }
  return "?";
}

double mttf_exponential_mobius(const MobiusTransform& m, std::span<const double> rates) {
  check_rates(rates, m.n());
  CompensatedSum sum;
  for (Mask a = 1; a < m.size(); ++a)
    if (m[a] != 0) sum += static_cast<double>(m[a]) / rate_sum(a, rates);
  return sum.value();
}

double mttf_exponential_weighted(const WeightedLatticePolynomial& p, std::span<const double> rates) {
  check_rates(rates, p.n());
  const RealSetFunction& w = p.weights();
  if (w[0] == kInf) return kInf;
  CompensatedSum sum;
  sum += w[0];
  for (Mask a = 1; a < w.size(); ++a) {
    const double lambda = rate_sum(a, rates);
    const int size = cardinality(a);
    CompensatedSum inner;
    for (Mask b = a;; b = (b - 1) & a) {
      const double sign = ((size - cardinality(b)) % 2 == 0) ? 1.0 : -1.0;
      const double mass = -std::expm1(-lambda * w[b]);  // ∫_0^{w(B)} λ e^{-λt} dt
      if (mass != 0.0) inner += sign * mass;
      if (b == 0) break;
    }
    const double coefficient = inner.value();
    if (coefficient != 0.0) sum += coefficient / lambda;
  }
  return sum.value();
}

MttfResult mttf_by_quadrature(const ReliabilityQuery& q) {
  const WeightedLatticePolynomial& p = q.system();
  const RealSetFunction& w = p.weights();
  MttfResult result;
  result.method = MttfMethod::PiecewiseQuadrature;
  if (w[0] == kInf) {
    result.value = kInf;
    return result;
  }
  const double end = w[w.full()];
  const Formula formula = q.resolved_formula();

  std::vector<double> points = {0.0};
  for (double b : p.breakpoints())
    if (b > 0.0) points.push_back(b);
  for (double k : q.lifetimes().kinks()) points.push_back(k);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (std::isfinite(end)) {
    points.erase(std::remove_if(points.begin(), points.end(), [end](double x) { return x >= end; }), points.end());
    points.push_back(end);
  }

  CompensatedSum value;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    const double a = points[i];
    const double b = points[i + 1];
    const ThresholdStructure piece = threshold_structure(p, 0.5 * (a + b));
    const auto integrand = [&](double t) { return reliability_from_tables(piece.tables, q.lifetimes(), t, formula); };
    const QuadratureResult r = integrate(integrand, a, b, kQuadratureTolerance, kQuadratureBudget);
    value += r.value;
    error += r.abs_error;
  }
  if (!std::isfinite(end)) {
    const double c = points.back();
    const ThresholdStructure tail = threshold_structure(p, c);
    const auto integrand = [&](double t) { return reliability_from_tables(tail.tables, q.lifetimes(), t, formula); };
    const QuadratureResult r = integrate_to_infinity(integrand, c, kQuadratureTolerance, kQuadratureBudget);
    value += r.value;
    error += r.abs_error;
  }
  result.value = value.value();
  result.error_estimate = error;
  return result;
}

MttfResult mttf(const ReliabilityQuery& q) {
  if (auto rates = q.lifetimes().independent_exponential_rates()) {
    const WeightedLatticePolynomial& p = q.system();
    MttfResult result;
    result.method = MttfMethod::ClosedFormExponential;
    if (p.is_unweighted()) {
      const auto v = BooleanSetFunction::from(p.n(), [&](Mask a) { return p.weights()[a] == kInf; });
      result.value = mttf_exponential_mobius(mobius_transform(v), *rates);
    } else {
      result.value = mttf_exponential_weighted(p, *rates);
    }
    return result;
  }
  return mttf_by_quadrature(q);
}

std::string_view to_string(DistributionRoute r) {
  switch (r) {
    case DistributionRoute::StateVector: return "statevec";
    case DistributionRoute::StateVectorDual: return "statevec-dual";
    case DistributionRoute::MobiusSurvival: return "mobius-survival";
    case DistributionRoute::MobiusCdf: return "mobius-cdf";
    case DistributionRoute::IndependentStateVector: return "independent-statevec";
    case DistributionRoute::IndependentStateVectorDual: return "independent-statevec-dual";
    case DistributionRoute::IndependentMobiusSurvival: return "independent-mobius-survival";
    case DistributionRoute::IndependentMobiusCdf: return "independent-mobius-cdf";
  }
  return "?";
}

double wlp_distribution_at(const WeightedLatticePolynomial& p, const JointLifetimeModel& j, double t,
                           DistributionRoute route) {
  check_time(t);
  if (p.n() != j.n())
    throw DimensionMismatch(fmt::format("system has {} components but lifetime model has {}", p.n(), j.n()));
  const ThresholdStructure s = threshold_structure(p, t);
  const StructureTables& tables = s.tables;
  const Mask full = full_mask(p.n());

  std::vector<double> cdfs;
  switch (route) {
    case DistributionRoute::IndependentStateVector:
    case DistributionRoute::IndependentStateVectorDual:
    case DistributionRoute::IndependentMobiusSurvival:
    case DistributionRoute::IndependentMobiusCdf:
      require_independent(j, to_string(route));
      cdfs.resize(j.n());
      for (int i = 0; i < j.n(); ++i) {
        const auto& m = std::get<JointLifetimeModel::Independent>(j.kind()).marginals[i];
        cdfs[i] = m.cdf(t);
      }
      break;
    default: break;
  }
  std::vector<double> survivals(cdfs.size());
  std::transform(cdfs.begin(), cdfs.end(), survivals.begin(), [](double f) { return 1.0 - f; });

  CompensatedSum sum;
  switch (route) {
    case DistributionRoute::StateVector: {
      const StateVectorDistribution dist = j.state_vector_dist(t);
      for (Mask a = 0; a <= full; ++a)
        if (tables.v[a]) sum += dist.probs[a];
      return clamp_probability(1.0 - sum.value());
    }
    case DistributionRoute::StateVectorDual: {
      const StateVectorDistribution dist = j.state_vector_dist(t);
      for (Mask a = 0; a <= full; ++a)
        if (tables.v_star[a]) sum += dist.probs[full & ~a];
      return clamp_probability(sum.value());
    }
    case DistributionRoute::MobiusSurvival: {
      for (Mask a = 0; a <= full; ++a)
        if (tables.m_v[a] != 0) sum += static_cast<double>(tables.m_v[a]) * j.survival_on(a, t);
      return clamp_probability(1.0 - sum.value());
    }
    case DistributionRoute::MobiusCdf: {
      for (Mask a = 0; a <= full; ++a)
        if (tables.m_v_star[a] != 0) sum += static_cast<double>(tables.m_v_star[a]) * j.cdf_on(a, t);
      return clamp_probability(sum.value());
    }
    case DistributionRoute::IndependentStateVector: {
      const std::vector<double> w = product_weights(survivals);
      for (Mask a = 0; a <= full; ++a)
        if (tables.v[a]) sum += w[a];
      return clamp_probability(1.0 - sum.value());
    }
    case DistributionRoute::IndependentStateVectorDual: {
      const std::vector<double> w = product_weights(cdfs);
      for (Mask a = 0; a <= full; ++a)
        if (tables.v_star[a]) sum += w[a];
      return clamp_probability(sum.value());
    }
    case DistributionRoute::IndependentMobiusSurvival: {
      const std::vector<double> prod = subset_products(survivals);
      for (Mask a = 0; a <= full; ++a)
        if (tables.m_v[a] != 0) sum += static_cast<double>(tables.m_v[a]) * prod[a];
      return clamp_probability(1.0 - sum.value());
    }
    case DistributionRoute::IndependentMobiusCdf: {
      const std::vector<double> prod = subset_products(cdfs);
      for (Mask a = 0; a <= full; ++a)
        if (tables.m_v_star[a] != 0) sum += static_cast<double>(tables.m_v_star[a]) * prod[a];
      return clamp_probability(sum.value());
    }
  }
  return 0.0;
}

double symmetric_reliability_at(const SymmetricProfile& profile, const JointLifetimeModel& j, double t) {
  check_time(t);
  if (profile.n() != j.n())
    throw DimensionMismatch(fmt::format("profile has {} components but lifetime model has {}", profile.n(), j.n()));
  const int k = profile.k_at(t);
  if (k > profile.n()) return 0.0;
  const StateVectorDistribution dist = j.state_vector_dist(t);
  CompensatedSum r;
  for (Mask a = 0; a < dist.probs.size(); ++a)
    if (cardinality(a) >= k) r += dist.probs[a];
  return clamp_probability(r.value());
}

}  // namespace relilat
