#ifndef RELILAT_RELIABILITY_HPP
#define RELILAT_RELIABILITY_HPP

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "relilat/latpoly.hpp"
#include "relilat/lifetimes.hpp"
#include "relilat/structure.hpp"

namespace relilat {

/// Which exact formula evaluates R_S(t).
enum class Route {
  Auto,
  /// Σ v_t(A) Pr(X(t) = e_A)
  StateVector,
  /// 1 - Σ v*_t(A) Pr(X(t) = e_{[n]\A})
  StateVectorDual,
  /// Σ m_{v_t}(A) Pr(T_i > t, i ∈ A)
  MobiusSurvival,
  /// 1 - Σ m_{v*_t}(A) Pr(T_i <= t, i ∈ A)
  MobiusCdf,
  /// Multilinear extension of φ_{v_t} at (R_1(t), ..., R_n(t)); independent lifetimes only.
  IndependentMle,
};

struct Formula {
  Route route = Route::Auto;
  /// Form used by Route::IndependentMle.
  FormTag form = FormTag::PrimalMobius;

  bool operator==(const Formula&) const = default;
};

/// Command-line names: auto, statevec, statevec-dual, mobius-survival, mobius-cdf,
/// mle-primal, mle-dual, mle-primal-mobius, mle-dual-mobius, mle-dnf, mle-cnf, mle-pivotal.
std::string to_string(Formula f);
std::optional<Formula> parse_formula(std::string_view name);
std::vector<Formula> all_formulas();

class ReliabilityQuery {
 public:
  ReliabilityQuery(const SystemStructure& system, JointLifetimeModel lifetimes, Formula formula = {});
  /// DimensionMismatch if the component counts differ; ModelMismatch if an independent-only
  /// route is requested for dependent lifetimes.
  ReliabilityQuery(WeightedLatticePolynomial system, JointLifetimeModel lifetimes, Formula formula = {});

  const WeightedLatticePolynomial& system() const { return system_; }
  const JointLifetimeModel& lifetimes() const { return lifetimes_; }
  Formula formula() const { return formula_; }
  /// Auto resolved against the lifetime model.
  Formula resolved_formula() const;
  ReliabilityQuery with_formula(Formula f) const { return ReliabilityQuery(system_, lifetimes_, f); }

 private:
  WeightedLatticePolynomial system_;
  JointLifetimeModel lifetimes_;
  Formula formula_;
};

/// R_S(t) from the thresholded structure tables at time t.
double reliability_from_tables(const StructureTables& tables, const JointLifetimeModel& lifetimes, double t,
                               Formula formula);

/// R_S(t) = Pr(p_w(T) > t). DomainError if t is negative or NaN.
double reliability_at(const ReliabilityQuery& q, double t);

enum class MttfMethod { ClosedFormExponential, PiecewiseQuadrature };
std::string_view to_string(MttfMethod m);

struct MttfResult {
  double value = 0.0;  // may be +∞
  MttfMethod method = MttfMethod::PiecewiseQuadrature;
  double error_estimate = 0.0;
};

struct ReliabilityReport {
  std::vector<double> grid;
  std::vector<double> values;
  std::vector<Formula> formula_used;
  std::optional<MttfResult> mttf;
};

/// Pointwise reliability_at over an ascending, nonnegative grid; the thresholded structure
/// is rebuilt only when the grid crosses a weight.
ReliabilityReport reliability_curve(const ReliabilityQuery& q, std::span<const double> grid,
                                    bool with_mttf = false);

/// Closed form for independent exponential lifetimes when available, else quadrature.
MttfResult mttf(const ReliabilityQuery& q);

/// Piecewise adaptive Gauss–Kronrod integral of R_S, split at the finite weights and at
/// marginal survival kinks; absolute tolerance 1e-9 per piece, 10^4 subdivisions at most.
MttfResult mttf_by_quadrature(const ReliabilityQuery& q);

/// Σ_{A≠∅} m(A) / λ_A.
double mttf_exponential_mobius(const MobiusTransform& m, std::span<const double> rates);

/// w(∅) + Σ_{A≠∅} Σ_{B⊆A} (-1)^{|A|-|B|} (1 - exp(-λ_A w(B))) / λ_A.
double mttf_exponential_weighted(const WeightedLatticePolynomial& p, std::span<const double> rates);

/// Routes for F_{p_w}(t) = Pr(p_w(T) <= t). The Independent* routes use the marginal
/// distribution functions F_i directly and require independent lifetimes.
enum class DistributionRoute {
  StateVector,
  StateVectorDual,
  MobiusSurvival,
  MobiusCdf,
  IndependentStateVector,
  IndependentStateVectorDual,
  IndependentMobiusSurvival,
  IndependentMobiusCdf,
};

inline constexpr std::array kAllDistributionRoutes = {
    DistributionRoute::StateVector,
    DistributionRoute::StateVectorDual,
    DistributionRoute::MobiusSurvival,
    DistributionRoute::MobiusCdf,
    DistributionRoute::IndependentStateVector,
    DistributionRoute::IndependentStateVectorDual,
    DistributionRoute::IndependentMobiusSurvival,
    DistributionRoute::IndependentMobiusCdf,
};

std::string_view to_string(DistributionRoute r);

double wlp_distribution_at(const WeightedLatticePolynomial& p, const JointLifetimeModel& j, double t,
                           DistributionRoute route = DistributionRoute::MobiusCdf);

/// Pr(|X(t)| >= k(t)) with k(t) = min{k : w̃(k) > t}.
double symmetric_reliability_at(const SymmetricProfile& profile, const JointLifetimeModel& j, double t);

}  // namespace relilat

#endif  // RELILAT_RELIABILITY_HPP
