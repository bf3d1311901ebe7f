#ifndef RELILAT_LATPOLY_HPP
#define RELILAT_LATPOLY_HPP

#include <span>
#include <string_view>
#include <vector>

#include "relilat/setfun.hpp"
#include "relilat/structure.hpp"

namespace relilat {

enum class WlpForm { Disjunctive, Conjunctive, Median };

/// Weighted lattice polynomial p_w on [0, ∞]^n, defined disjunctively by its unique
/// nondecreasing coefficient function w:
///
///   p_w(t) = max_A ( w(A) ∧ min_{i ∈ A} t_i ).
///
/// Plain lattice polynomials are the case w ∈ {0, ∞} with w(∅) = 0 and w([n]) = ∞.
class WeightedLatticePolynomial {
 public:
  /// Throws DomainError on negative or NaN weights, MonotonicityError if w decreases.
  explicit WeightedLatticePolynomial(RealSetFunction w);

  int n() const { return w_.n(); }
  const RealSetFunction& weights() const { return w_; }

  /// DomainError on negative or NaN coordinates; DimensionMismatch on length.
  double eval(std::span<const double> t, WlpForm form = WlpForm::Disjunctive) const;
  /// Conjunctive coefficient w^c(A) = p(e_{[n]\A}) = w([n] \ A).
  double conjunctive_weight(Mask a) const { return w_[complement(a, n())]; }

  bool is_unweighted() const;
  /// Sorted distinct finite weights: the times at which the thresholded structure changes.
  std::vector<double> breakpoints() const;

  bool operator==(const WeightedLatticePolynomial&) const = default;

 private:
  RealSetFunction w_;
};

struct MinimalWlpRepresentation {
  /// u_d(A) = w(A) if w(B) < w(A) for all B ⊊ A, else 0.
  RealSetFunction u_d;
  /// u_c(A) = w(A) if w(A) < w(B) for all B ⊋ A, else ∞.
  RealSetFunction u_c;

  /// Sets carrying a nonzero disjunctive coefficient, ascending mask order.
  std::vector<Mask> disjunctive_terms() const;
  /// Sets carrying a finite conjunctive coefficient, ascending mask order.
  std::vector<Mask> conjunctive_terms() const;
  /// max over disjunctive terms of u_d(A) ∧ min_{i∈A} t_i.
  double eval_disjunctive(std::span<const double> t) const;
  /// min over conjunctive terms B of u_c(B) ∨ max_{i∉B} t_i.
  double eval_conjunctive(std::span<const double> t) const;
};

MinimalWlpRepresentation minimal_representation(const WeightedLatticePolynomial& p);

enum class Degeneracy {
  None,
  /// w(∅) > t: the system is alive whatever the component states.
  AliveRegardless,
  /// w([n]) <= t: the system is failed whatever the component states.
  FailedRegardless,
};

std::string_view to_string(Degeneracy d);

/// The structure φ_{v_t} with v_t(A) = Ind(w(A) > t). Degenerate members of the family
/// are kept (flagged) rather than rejected.
struct ThresholdStructure {
  double time = 0.0;
  StructureTables tables;
  Degeneracy degeneracy = Degeneracy::None;

  bool degenerate() const { return degeneracy != Degeneracy::None; }
  /// The validated structure; ValidationError when degenerate.
  SystemStructure structure() const;
};

/// DomainError if t is negative or NaN.
ThresholdStructure threshold_structure(const WeightedLatticePolynomial& p, double t);

/// w = γ ∘ v with γ(0) = 0, γ(1) = ∞.
WeightedLatticePolynomial lp_from_structure(const SystemStructure& s);

/// p(t) = min_i (bounds_i ∨ t_i).
WeightedLatticePolynomial make_weighted_min(std::span<const double> bounds);
/// p(t) = max_i (bounds_i ∧ t_i).
WeightedLatticePolynomial make_weighted_max(std::span<const double> bounds);

/// Cardinality-based weights w(A) = w̃(|A|).
class SymmetricProfile {
 public:
  /// Expects n + 1 values; MonotonicityError if they decrease, DomainError if negative/NaN.
  explicit SymmetricProfile(std::vector<double> w_tilde);

  int n() const { return static_cast<int>(w_tilde_.size()) - 1; }
  double operator[](int k) const { return w_tilde_[k]; }
  std::span<const double> values() const { return w_tilde_; }
  /// k(t) = min{k : w̃(k) > t}, or n + 1 when no such k exists.
  int k_at(double t) const;

 private:
  std::vector<double> w_tilde_;
};

WeightedLatticePolynomial make_symmetric(const SymmetricProfile& profile);

/// j-th smallest coordinate (1-based); j = n + 1 yields ∞.
double order_statistic(std::span<const double> t, int j);

/// max_k ( w̃(k) ∧ f_{n-k+1}(t) ).
double eval_symmetric(const SymmetricProfile& profile, std::span<const double> t);

}  // namespace relilat

#endif  // RELILAT_LATPOLY_HPP
