#ifndef RELILAT_STRUCTURE_HPP
#define RELILAT_STRUCTURE_HPP

#include <array>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "relilat/setfun.hpp"

namespace relilat {

/// Algebraic form used to evaluate the multilinear extension of a structure function.
enum class FormTag {
  Primal,
  Dual,
  PrimalMobius,
  DualMobius,
  DisjunctiveNormal,
  ConjunctiveNormal,
  Pivotal,
};

inline constexpr std::array kAllForms = {
    FormTag::Primal,           FormTag::Dual,
    FormTag::PrimalMobius,     FormTag::DualMobius,
    FormTag::DisjunctiveNormal, FormTag::ConjunctiveNormal,
    FormTag::Pivotal,
};

std::string_view to_string(FormTag form);
std::optional<FormTag> parse_form_tag(std::string_view name);

struct PathCutReport {
  /// Sorted by cardinality, then lexicographically by component index.
  std::vector<Mask> minimal_paths;
  std::vector<Mask> minimal_cuts;
};

/// A boolean set function together with its Möbius transform, dual and dual Möbius
/// transform. Monotone but not necessarily nonconstant: the thresholded structures of a
/// weighted lattice polynomial use the same tables.
struct StructureTables {
  BooleanSetFunction v;
  MobiusTransform m_v;
  BooleanSetFunction v_star;
  MobiusTransform m_v_star;

  static StructureTables build(BooleanSetFunction v);
  int n() const { return v.n(); }
};

/// Minimal elements of {A : v(A) = 1} for a monotone v, sorted by cardinality and then
/// lexicographically by component index.
std::vector<Mask> minimal_true_sets(const BooleanSetFunction& v);

/// Multilinear extension of the structure encoded by `tables`, evaluated in the given form.
/// DomainError unless every x_i lies in [0, 1].
double eval_mle(const StructureTables& tables, std::span<const double> x, FormTag form);

/// A validated semicoherent structure function φ_v with eagerly built caches.
class SystemStructure {
 public:
  /// Throws ValidationError if v is not nondecreasing and nonconstant.
  explicit SystemStructure(BooleanSetFunction v);

  int n() const { return tables_.n(); }
  const BooleanSetFunction& v() const { return tables_.v; }
  const MobiusTransform& mobius() const { return tables_.m_v; }
  const BooleanSetFunction& dual() const { return tables_.v_star; }
  const MobiusTransform& dual_mobius() const { return tables_.m_v_star; }
  const StructureTables& tables() const { return tables_; }
  const PathCutReport& paths_and_cuts() const { return paths_cuts_; }
  /// Components i with φ(1_i, x) = φ(0_i, x) for all x (1-based).
  const std::vector<int>& irrelevant_components() const { return irrelevant_; }

  /// φ at the state vector whose functioning components form `state`.
  bool eval(Mask state) const { return tables_.v[state] != 0; }
  /// φ(x) for a binary vector; DimensionMismatch on length, DomainError on non-binary entries.
  int eval(std::span<const int> x) const;
  double eval_mle(std::span<const double> x, FormTag form = FormTag::PrimalMobius) const {
    return relilat::eval_mle(tables_, x, form);
  }

  bool operator==(const SystemStructure& other) const { return tables_.v == other.tables_.v; }

 private:
  StructureTables tables_;
  PathCutReport paths_cuts_;
  std::vector<int> irrelevant_;
};

PathCutReport minimal_path_sets(const SystemStructure& s);

/// v(A) = 1 iff A contains one of `paths`. EmptyCover if `paths` is empty.
SystemStructure from_path_sets(int n, std::span<const Mask> paths);
/// Mirror of from_path_sets: v([n] \ A) = 0 iff A contains one of `cuts`.
SystemStructure from_cut_sets(int n, std::span<const Mask> cuts);

SystemStructure make_series(int n);
SystemStructure make_parallel(int n);
/// v(A) = 1 iff |A| >= k. RangeError unless 1 <= k <= n.
SystemStructure make_kofn(int n, int k);
/// Five-component bridge: minimal paths {1,4}, {2,5}, {1,3,5}, {2,3,4}.
SystemStructure make_bridge();

/// Closed-form Möbius coefficients of the k-out-of-n structure:
/// m(A) = (-1)^(|A|-k) C(|A|-1, k-1) for |A| >= k, else 0.
MobiusTransform kofn_mobius(int n, int k);

}  // namespace relilat

#endif  // RELILAT_STRUCTURE_HPP
