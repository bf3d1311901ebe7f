#include "relilat/latpoly.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

namespace relilat {

namespace {

void check_lifetime_vector(std::span<const double> t, int n) {
  if (static_cast<int>(t.size()) != n)
    throw DimensionMismatch(fmt::format("expected {} coordinates, got {}", n, t.size()));
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (std::isnan(t[i]) || t[i] < 0.0)
      throw DomainError(fmt::format("t[{}] = {} outside [0, inf]", i + 1, t[i]));
  }
}

void check_lattice_value(double x, std::string_view what) {
  if (std::isnan(x) || x < 0.0) throw DomainError(fmt::format("{} = {} outside [0, inf]", what, x));
}

double median3(double x, double y, double z) {
  return std::max({std::min(x, y), std::min(y, z), std::min(z, x)});
}

}  // namespace

WeightedLatticePolynomial::WeightedLatticePolynomial(RealSetFunction w) : w_(std::move(w)) {
  for (Mask a = 0; a < w_.size(); ++a) check_lattice_value(w_[a], fmt::format("w({})", format_subset(a)));
  if (auto violation = first_monotonicity_violation(w_)) {
    const auto [a, b] = *violation;
    throw MonotonicityError(fmt::format("weights decrease: w({}) = {} > w({}) = {}", format_subset(a),
                                        w_[a], format_subset(b), w_[b]));
  }
}

double WeightedLatticePolynomial::eval(std::span<const double> t, WlpForm form) const {
  const int n = this->n();
  check_lifetime_vector(t, n);
  const std::size_t size = w_.size();

  switch (form) {
    case WlpForm::Disjunctive: {
      std::vector<double> min_t(size);
      min_t[0] = kInf;
      double result = w_[0];
      for (Mask a = 1; a < size; ++a) {
        min_t[a] = std::min(min_t[a & (a - 1)], t[std::countr_zero(a)]);
        result = std::max(result, std::min(w_[a], min_t[a]));
      }
      return result;
    }
    case WlpForm::Conjunctive: {
      std::vector<double> max_t(size);
      max_t[0] = 0.0;
      double result = conjunctive_weight(0);
      for (Mask a = 1; a < size; ++a) {
        max_t[a] = std::max(max_t[a & (a - 1)], t[std::countr_zero(a)]);
        result = std::min(result, std::max(conjunctive_weight(a), max_t[a]));
      }
      return result;
    }
    case WlpForm::Median: {
      // p(t) = median(p(0_i, t), t_i, p(∞_i, t)) pivoting on the lowest free index; leaves
      // are p(e_A) = w(A), folded from the deepest pivot upward.
      std::vector<double> g(w_.values().begin(), w_.values().end());
      for (int i = n - 1; i >= 0; --i) {
        const Mask half = Mask{1} << i;
        for (Mask a = 0; a < half; ++a) g[a] = median3(g[a], t[i], g[a | half]);
      }
      return g[0];
    }
  }
  return 0.0;
}

bool WeightedLatticePolynomial::is_unweighted() const {
  for (double x : w_.values())
    if (x != 0.0 && x != kInf) return false;
  return w_[0] == 0.0 && w_[w_.full()] == kInf;
}

std::vector<double> WeightedLatticePolynomial::breakpoints() const {
  std::vector<double> out;
  for (double x : w_.values())
    if (std::isfinite(x)) out.push_back(x);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Mask> MinimalWlpRepresentation::disjunctive_terms() const {
  std::vector<Mask> out;
  for (Mask a = 0; a < u_d.size(); ++a)
    if (u_d[a] > 0.0) out.push_back(a);
  return out;
}

std::vector<Mask> MinimalWlpRepresentation::conjunctive_terms() const {
  std::vector<Mask> out;
  for (Mask a = 0; a < u_c.size(); ++a)
    if (u_c[a] < kInf) out.push_back(a);
  return out;
}

double MinimalWlpRepresentation::eval_disjunctive(std::span<const double> t) const {
  double result = 0.0;
  for (Mask a = 0; a < u_d.size(); ++a) {
    if (u_d[a] <= result) continue;
    double term = u_d[a];
    for (Mask rest = a; rest != 0; rest &= rest - 1) term = std::min(term, t[std::countr_zero(rest)]);
    result = std::max(result, term);
  }
  return result;
}

double MinimalWlpRepresentation::eval_conjunctive(std::span<const double> t) const {
  const Mask full = u_c.full();
  double result = kInf;
  for (Mask b = 0; b < u_c.size(); ++b) {
    if (u_c[b] >= result) continue;
    double term = u_c[b];
    for (Mask rest = full & ~b; rest != 0; rest &= rest - 1)
      term = std::max(term, t[std::countr_zero(rest)]);
    result = std::min(result, term);
  }
  return result;
}

MinimalWlpRepresentation minimal_representation(const WeightedLatticePolynomial& p) {
  const RealSetFunction& w = p.weights();
  const int n = p.n();
  // Since w is nondecreasing, strict growth over every maximal proper subset (resp. minimal
  // proper superset) is equivalent to strict growth over all of them.
  auto u_d = RealSetFunction::from(n, [&](Mask a) {
    for (Mask rest = a; rest != 0; rest &= rest - 1)
      if (!(w[a ^ (rest & (~rest + 1))] < w[a])) return 0.0;
    return w[a];
  });
  const Mask full = w.full();
  auto u_c = RealSetFunction::from(n, [&](Mask a) {
    for (Mask rest = full & ~a; rest != 0; rest &= rest - 1)
      if (!(w[a] < w[a | (rest & (~rest + 1))])) return kInf;
    return w[a];
  });
  return {std::move(u_d), std::move(u_c)};
}

std::string_view to_string(Degeneracy d) {
  switch (d) {
    case Degeneracy::None: return "none";
    case Degeneracy::AliveRegardless: return "alive_regardless";
    case Degeneracy::FailedRegardless: return "failed_regardless";
  }
  return "?";
}

SystemStructure ThresholdStructure::structure() const {
  if (degenerate())
    throw ValidationError(fmt::format("thresholded structure at t = {} is degenerate ({})", time,
                                      to_string(degeneracy)));
  return SystemStructure(tables.v);
}

ThresholdStructure threshold_structure(const WeightedLatticePolynomial& p, double t) {
  check_lattice_value(t, "t");
  const RealSetFunction& w = p.weights();
  ThresholdStructure out;
  out.time = t;
  out.tables = StructureTables::build(BooleanSetFunction::from(p.n(), [&](Mask a) { return w[a] > t; }));
  if (w[0] > t)
    out.degeneracy = Degeneracy::AliveRegardless;
  else if (w[w.full()] <= t)
    out.degeneracy = Degeneracy::FailedRegardless;
  return out;
}

WeightedLatticePolynomial lp_from_structure(const SystemStructure& s) {
  return WeightedLatticePolynomial(
      RealSetFunction::from(s.n(), [&](Mask a) { return s.v()[a] ? kInf : 0.0; }));
}

WeightedLatticePolynomial make_weighted_min(std::span<const double> bounds) {
  const int n = static_cast<int>(bounds.size());
  check_component_count(n);
  for (int i = 0; i < n; ++i) check_lattice_value(bounds[i], fmt::format("bound {}", i + 1));
  // w([n] \ A) = min_{i ∈ A} bounds_i
  return WeightedLatticePolynomial(RealSetFunction::from(n, [&](Mask b) {
    double x = kInf;
    for (Mask rest = complement(b, n); rest != 0; rest &= rest - 1)
      x = std::min(x, bounds[std::countr_zero(rest)]);
    return x;
  }));
}

WeightedLatticePolynomial make_weighted_max(std::span<const double> bounds) {
  const int n = static_cast<int>(bounds.size());
  check_component_count(n);
  for (int i = 0; i < n; ++i) check_lattice_value(bounds[i], fmt::format("bound {}", i + 1));
  return WeightedLatticePolynomial(RealSetFunction::from(n, [&](Mask a) {
    double x = 0.0;
    for (Mask rest = a; rest != 0; rest &= rest - 1) x = std::max(x, bounds[std::countr_zero(rest)]);
    return x;
  }));
}

SymmetricProfile::SymmetricProfile(std::vector<double> w_tilde) : w_tilde_(std::move(w_tilde)) {
  check_component_count(static_cast<int>(w_tilde_.size()) - 1);
  for (std::size_t k = 0; k < w_tilde_.size(); ++k) {
    check_lattice_value(w_tilde_[k], fmt::format("profile[{}]", k));
    if (k > 0 && w_tilde_[k - 1] > w_tilde_[k])
      throw MonotonicityError(fmt::format("profile decreases: w({}) = {} > w({}) = {}", k - 1,
                                          w_tilde_[k - 1], k, w_tilde_[k]));
  }
}

int SymmetricProfile::k_at(double t) const {
  for (int k = 0; k <= n(); ++k)
    if (w_tilde_[k] > t) return k;
  return n() + 1;
}

WeightedLatticePolynomial make_symmetric(const SymmetricProfile& profile) {
  return WeightedLatticePolynomial(
      RealSetFunction::from(profile.n(), [&](Mask a) { return profile[cardinality(a)]; }));
}

double order_statistic(std::span<const double> t, int j) {
  const int n = static_cast<int>(t.size());
  if (j < 1 || j > n + 1) throw RangeError(fmt::format("order statistic index {} outside [1, {}]", j, n + 1));
  if (j == n + 1) return kInf;
  std::vector<double> sorted(t.begin(), t.end());
  std::nth_element(sorted.begin(), sorted.begin() + (j - 1), sorted.end());
  return sorted[j - 1];
}

double eval_symmetric(const SymmetricProfile& profile, std::span<const double> t) {
  const int n = profile.n();
  check_lifetime_vector(t, n);
  std::vector<double> sorted(t.begin(), t.end());
  std::sort(sorted.begin(), sorted.end());
  double result = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double f = (k == 0) ? kInf : sorted[n - k];  // f_{n-k+1}
    result = std::max(result, std::min(profile[k], f));
  }
  return result;
}

}  // namespace relilat
