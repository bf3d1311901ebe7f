#include "relilat/structure.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "relilat/numerics.hpp"

namespace relilat {

namespace {

void check_probability_vector(std::span<const double> x, int n) {
  if (static_cast<int>(x.size()) != n)
    throw DimensionMismatch(fmt::format("expected {} component values, got {}", n, x.size()));
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] >= 0.0 && x[i] <= 1.0))
      throw DomainError(fmt::format("x[{}] = {} outside [0, 1]", i + 1, x[i]));
  }
}

// table[A] = prod_{i in A} x_i * prod_{i not in A} (1 - x_i)
std::vector<double> state_weights(std::span<const double> x) {
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

// table[A] = prod_{i in A} x_i
std::vector<double> subset_products(std::span<const double> x) {
  const int n = static_cast<int>(x.size());
  std::vector<double> p(std::size_t{1} << n);
  p[0] = 1.0;
  for (Mask a = 1; a < p.size(); ++a) p[a] = p[a & (a - 1)] * x[std::countr_zero(a)];
  return p;
}

// Multilinear reduction (x_i^2 = x_i) of prod_{S in terms} (1 - x^S), as coefficients.
std::vector<std::int64_t> expand_complement_product(int n, std::span<const Mask> terms) {
  std::vector<std::int64_t> c(std::size_t{1} << n, 0);
  c[0] = 1;
  std::vector<std::int64_t> next;
  for (Mask s : terms) {
    next = c;
    for (Mask a = 0; a < c.size(); ++a)
      if (c[a] != 0) next[a | s] -= c[a];
    c.swap(next);
  }
  return c;
}

double eval_polynomial(std::span<const std::int64_t> coefficients, std::span<const double> x) {
  const std::vector<double> p = subset_products(x);
  CompensatedSum sum;
  for (Mask a = 0; a < coefficients.size(); ++a)
    if (coefficients[a] != 0) sum += static_cast<double>(coefficients[a]) * p[a];
  return sum.value();
}

}  // namespace

std::string_view to_string(FormTag form) {
  switch (form) {
    case FormTag::Primal: return "primal";
    case FormTag::Dual: return "dual";
    case FormTag::PrimalMobius: return "primal-mobius";
    case FormTag::DualMobius: return "dual-mobius";
    case FormTag::DisjunctiveNormal: return "dnf";
    case FormTag::ConjunctiveNormal: return "cnf";
    case FormTag::Pivotal: return "pivotal";
  }
  return "?";
}

std::optional<FormTag> parse_form_tag(std::string_view name) {
  for (FormTag f : kAllForms)
    if (to_string(f) == name) return f;
  return std::nullopt;
}

StructureTables StructureTables::build(BooleanSetFunction v) {
  StructureTables t;
  t.m_v = mobius_transform(v);
  t.v_star = relilat::dual(v);
  t.m_v_star = mobius_transform(t.v_star);
  t.v = std::move(v);
  return t;
}

std::vector<Mask> minimal_true_sets(const BooleanSetFunction& v) {
  std::vector<Mask> out;
  for (Mask a = 0; a < v.size(); ++a) {
    if (!v[a]) continue;
    bool minimal = true;
    for (Mask rest = a; rest != 0 && minimal; rest &= rest - 1) {
      const Mask bit = rest & (~rest + 1);
      if (v[a ^ bit]) minimal = false;
    }
    if (minimal) out.push_back(a);
  }
  // Within a cardinality, "1 3 5" precedes "2 3 4": the set holding the smallest index
  // of the symmetric difference comes first.
  std::sort(out.begin(), out.end(), [](Mask a, Mask b) {
    if (cardinality(a) != cardinality(b)) return cardinality(a) < cardinality(b);
    const Mask d = a ^ b;
    return (a & d & (~d + 1)) != 0;
  });
  return out;
}

double eval_mle(const StructureTables& tables, std::span<const double> x, FormTag form) {
  const int n = tables.n();
  check_probability_vector(x, n);
  const Mask full = full_mask(n);

  switch (form) {
    case FormTag::Primal: {
      const std::vector<double> w = state_weights(x);
      CompensatedSum sum;
      for (Mask a = 0; a < w.size(); ++a)
        if (tables.v[a]) sum += w[a];
      return sum.value();
    }
    case FormTag::Dual: {
      const std::vector<double> w = state_weights(x);
      CompensatedSum sum;
      for (Mask a = 0; a < w.size(); ++a)
        if (tables.v_star[a]) sum += w[full & ~a];
      return 1.0 - sum.value();
    }
    case FormTag::PrimalMobius: {
      const std::vector<double> p = subset_products(x);
      CompensatedSum sum;
      for (Mask a = 0; a < p.size(); ++a)
        if (tables.m_v[a] != 0) sum += static_cast<double>(tables.m_v[a]) * p[a];
      return sum.value();
    }
    case FormTag::DualMobius: {
      std::vector<double> failed(x.size());
      std::transform(x.begin(), x.end(), failed.begin(), [](double xi) { return 1.0 - xi; });
      const std::vector<double> q = subset_products(failed);
      // Σ m_{v*}(A) = v*([n]); the leading term vanishes unless v(∅) = 1.
      CompensatedSum sum;
      sum += 1.0 - tables.v_star[full];
      for (Mask a = 0; a < q.size(); ++a)
        if (tables.m_v_star[a] != 0) sum += static_cast<double>(tables.m_v_star[a]) * (1.0 - q[a]);
      return sum.value();
    }
    case FormTag::DisjunctiveNormal: {
      // 1 - prod_P (1 - x^P) over minimal paths, reduced multilinearly.
      const std::vector<Mask> paths = minimal_true_sets(tables.v);
      const std::vector<std::int64_t> c = expand_complement_product(n, paths);
      return 1.0 - eval_polynomial(c, x);
    }
    case FormTag::ConjunctiveNormal: {
      // prod_K (1 - y^K) over minimal cuts with y = 1 - x, reduced multilinearly.
      const std::vector<Mask> cuts = minimal_true_sets(tables.v_star);
      const std::vector<std::int64_t> c = expand_complement_product(n, cuts);
      std::vector<double> y(x.size());
      std::transform(x.begin(), x.end(), y.begin(), [](double xi) { return 1.0 - xi; });
      return eval_polynomial(c, y);
    }
    case FormTag::Pivotal: {
      // φ(x) = x_i φ(1_i, x) + (1 - x_i) φ(0_i, x), pivoting on the lowest free index;
      // the table is folded from the deepest pivot (highest index) upward.
      std::vector<double> g(tables.v.values().begin(), tables.v.values().end());
      for (int i = n - 1; i >= 0; --i) {
        const Mask half = Mask{1} << i;
        for (Mask a = 0; a < half; ++a) g[a] = x[i] * g[a | half] + (1.0 - x[i]) * g[a];
      }
      return g[0];
    }
  }
  return 0.0;
}

SystemStructure::SystemStructure(BooleanSetFunction v) {
  const ValidationReport report = validate_semicoherent(v);
  if (!report.valid()) throw ValidationError("structure function is not semicoherent: " + report.describe());
  tables_ = StructureTables::build(std::move(v));
  paths_cuts_.minimal_paths = minimal_true_sets(tables_.v);
  paths_cuts_.minimal_cuts = minimal_true_sets(tables_.v_star);
  for (int i = 0; i < n(); ++i) {
    const Mask bit = Mask{1} << i;
    bool relevant = false;
    for (Mask a = 0; a < tables_.v.size() && !relevant; ++a)
      if (!(a & bit) && tables_.v[a] != tables_.v[a | bit]) relevant = true;
    if (!relevant) irrelevant_.push_back(i + 1);
  }
}

int SystemStructure::eval(std::span<const int> x) const {
  if (static_cast<int>(x.size()) != n())
    throw DimensionMismatch(fmt::format("expected {} component states, got {}", n(), x.size()));
  Mask state = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] != 0 && x[i] != 1)
      throw DomainError(fmt::format("component state x[{}] = {} is not binary", i + 1, x[i]));
    if (x[i]) state |= Mask{1} << i;
  }
  return eval(state) ? 1 : 0;
}

PathCutReport minimal_path_sets(const SystemStructure& s) { return s.paths_and_cuts(); }

namespace {

BooleanSetFunction upward_closure(int n, std::span<const Mask> generators, const char* what) {
  check_component_count(n);
  if (generators.empty()) throw EmptyCover(fmt::format("no {} given", what));
  std::vector<std::uint8_t> v(std::size_t{1} << n, 0);
  for (Mask g : generators) {
    if (g == 0) throw DomainError(fmt::format("empty {} set", what));
    if (!is_subset(g, full_mask(n)))
      throw RangeError(fmt::format("{} set mentions components beyond {}", what, n));
    v[g] = 1;
  }
  for (int i = 0; i < n; ++i) {
    const Mask bit = Mask{1} << i;
    for (Mask a = 0; a < v.size(); ++a)
      if (a & bit) v[a] |= v[a ^ bit];
  }
  return BooleanSetFunction(n, std::move(v));
}

}  // namespace

SystemStructure from_path_sets(int n, std::span<const Mask> paths) {
  return SystemStructure(upward_closure(n, paths, "path"));
}

SystemStructure from_cut_sets(int n, std::span<const Mask> cuts) {
  // The cuts of v are the paths of v*.
  return SystemStructure(relilat::dual(upward_closure(n, cuts, "cut")));
}

SystemStructure make_series(int n) { return make_kofn(n, n); }
SystemStructure make_parallel(int n) { return make_kofn(n, 1); }

SystemStructure make_kofn(int n, int k) {
  check_component_count(n);
  if (k < 1 || k > n) throw RangeError(fmt::format("k = {} outside [1, {}]", k, n));
  return SystemStructure(BooleanSetFunction::from(n, [k](Mask a) { return cardinality(a) >= k; }));
}

SystemStructure make_bridge() {
  const std::array<Mask, 4> paths = {0b01001, 0b10010, 0b10101, 0b01110};
  return from_path_sets(5, paths);
}

MobiusTransform kofn_mobius(int n, int k) {
  check_component_count(n);
  if (k < 1 || k > n) throw RangeError(fmt::format("k = {} outside [1, {}]", k, n));
  // binom[j] = C(j, k-1)
  std::vector<std::int64_t> binom(n + 1, 0);
  for (int j = k - 1; j <= n; ++j) {
    std::int64_t c = 1;
    for (int r = 1; r <= k - 1; ++r) c = c * (j - (k - 1) + r) / r;
    binom[j] = c;
  }
  return MobiusTransform::from(n, [&](Mask a) -> std::int64_t {
    const int size = cardinality(a);
    if (size < k) return 0;
    const std::int64_t sign = ((size - k) % 2 == 0) ? 1 : -1;
    return sign * binom[size - 1];
  });
}

}  // namespace relilat
