#ifndef RELILAT_LIFETIMES_HPP
#define RELILAT_LIFETIMES_HPP

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "relilat/setfun.hpp"

namespace relilat {

/// Reproducible uniform source: std::mt19937_64 with an explicit seed, mapped to the open
/// interval (0, 1) from the top 53 bits of each draw.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

/// Lifetime distribution of a single component; the survival function tends to 0.
class MarginalLifetime {
 public:
  struct Exponential {
    double rate;
  };
  struct Weibull {
    double shape;
    double scale;
  };
  /// Survival interpolated linearly between knots, starting from (0, 1) and ending at 0.
  struct PiecewiseEmpirical {
    std::vector<std::pair<double, double>> knots;  // (time, survival)
  };
  using Kind = std::variant<Exponential, Weibull, PiecewiseEmpirical>;

  /// DomainError unless rate > 0.
  static MarginalLifetime exponential(double rate);
  /// DomainError unless shape > 0 and scale > 0.
  static MarginalLifetime weibull(double shape, double scale);
  /// Knots sorted by strictly increasing time >= 0, survival nonincreasing in [0, 1], last
  /// survival 0 (defective lifetimes are rejected).
  static MarginalLifetime piecewise(std::vector<std::pair<double, double>> knots);

  const Kind& kind() const { return kind_; }
  std::optional<double> exponential_rate() const;

  double survival(double t) const;
  double cdf(double t) const { return 1.0 - survival(t); }
  /// Smallest t with survival(t) <= u, for u in (0, 1).
  double inverse_survival(double u) const;
  /// Times where the survival function is not smooth (empirical knots).
  std::vector<double> kinks() const;

  bool operator==(const MarginalLifetime&) const;

 private:
  explicit MarginalLifetime(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

struct LifetimeAtom {
  std::vector<double> times;
  double probability;
};

/// Pr(X(t) = e_A) for every A ⊆ [n].
struct StateVectorDistribution {
  double time = 0.0;
  RealSetFunction probs;
  /// Entries that came out slightly negative from Möbius cancellation and were clamped.
  int clamped = 0;
};

/// Joint law of (T_1, ..., T_n). A component counts as functioning at t iff T_i > t.
class JointLifetimeModel {
 public:
  struct Independent {
    std::vector<MarginalLifetime> marginals;
  };
  struct DiscreteJoint {
    std::vector<LifetimeAtom> atoms;
  };
  /// T_i = S_i^{-1}(U) for one shared uniform U.
  struct Comonotone {
    std::vector<MarginalLifetime> marginals;
  };
  using Kind = std::variant<Independent, DiscreteJoint, Comonotone>;

  static JointLifetimeModel independent(std::vector<MarginalLifetime> marginals);
  /// Atom coordinates in [0, ∞], probabilities nonnegative summing to 1 within 1e-12.
  static JointLifetimeModel discrete_joint(std::vector<LifetimeAtom> atoms);
  static JointLifetimeModel comonotone(std::vector<MarginalLifetime> marginals);

  int n() const { return n_; }
  const Kind& kind() const { return kind_; }
  bool is_independent() const { return std::holds_alternative<Independent>(kind_); }
  /// Rates when the model is independent with exponential marginals only.
  std::optional<std::vector<double>> independent_exponential_rates() const;

  /// R(t) = Pr(T_i > t_i for all i).
  double joint_survival(std::span<const double> t) const;
  /// F(t) = Pr(T_i <= t_i for all i).
  double joint_cdf(std::span<const double> t) const;
  /// Pr(T_i > t for all i ∈ A); 1 for A = ∅.
  double survival_on(Mask a, double t) const;
  /// Pr(T_i <= t for all i ∈ A); 1 for A = ∅.
  double cdf_on(Mask a, double t) const;
  /// R_i(t) for 0-based component i.
  double marginal_survival(int i, double t) const;

  /// G(z, t) = E[prod z_i^{X_i(t)}]; DomainError if |z_i| > 1.
  double pgf(std::span<const double> z, double t) const;
  StateVectorDistribution state_vector_dist(double t) const;

  /// Times where the survival functions kink or jump (empirical knots, finite atom
  /// coordinates); used to split quadrature.
  std::vector<double> kinks() const;

  std::vector<double> draw(Rng& rng) const;

 private:
  JointLifetimeModel(int n, Kind kind) : n_(n), kind_(std::move(kind)) {}
  int n_;
  Kind kind_;
};

/// `count` lifetime vectors from a single mt19937_64 stream seeded with `seed`.
std::vector<std::vector<double>> sample_lifetimes(const JointLifetimeModel& j, std::uint64_t seed,
                                                  std::size_t count);

}  // namespace relilat

#endif  // RELILAT_LIFETIMES_HPP
