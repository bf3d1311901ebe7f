#include "relilat/setfun.hpp"

#include <fmt/format.h>

namespace relilat {

void check_component_count(int n) {
  if (n < 1 || n > kMaxComponents)
    throw RangeError(fmt::format("component count {} outside [1, {}]", n, kMaxComponents));
}

Mask mask_of(std::span<const int> components, int n) {
  Mask a = 0;
  for (int c : components) {
    if (c < 1 || c > n) throw RangeError(fmt::format("component {} outside [1, {}]", c, n));
    a |= Mask{1} << (c - 1);
  }
  return a;
}

std::vector<int> components_of(Mask a) {
  std::vector<int> out;
  for (int i = 0; a != 0; ++i, a >>= 1)
    if (a & 1u) out.push_back(i + 1);
  return out;
}

std::string format_subset(Mask a) {
  if (a == 0) return "{}";
  return fmt::format("{}", fmt::join(components_of(a), " "));
}

MobiusTransform mobius_transform(const BooleanSetFunction& v) {
  std::vector<std::int64_t> values(v.values().begin(), v.values().end());
  detail::mobius_in_place(values, v.n());
  return MobiusTransform(v.n(), std::move(values));
}

MobiusTransform mobius_transform(const MobiusTransform& v) {
  std::vector<std::int64_t> values(v.values().begin(), v.values().end());
  detail::mobius_in_place(values, v.n());
  return MobiusTransform(v.n(), std::move(values));
}

RealSetFunction mobius_transform(const RealSetFunction& v) {
  std::vector<double> values(v.values().begin(), v.values().end());
  detail::mobius_in_place(values, v.n());
  return RealSetFunction(v.n(), std::move(values));
}

MobiusTransform zeta_transform(const MobiusTransform& m) {
  std::vector<std::int64_t> values(m.values().begin(), m.values().end());
  detail::zeta_in_place(values, m.n());
  return MobiusTransform(m.n(), std::move(values));
}

RealSetFunction zeta_transform(const RealSetFunction& m) {
  std::vector<double> values(m.values().begin(), m.values().end());
  detail::zeta_in_place(values, m.n());
  return RealSetFunction(m.n(), std::move(values));
}

BooleanSetFunction as_boolean(const MobiusTransform& v) {
  return BooleanSetFunction::from(v.n(), [&](Mask a) {
    if (v[a] != 0 && v[a] != 1)
      throw NonBooleanInput(fmt::format("value {} at {} is not boolean", v[a], format_subset(a)));
    return v[a];
  });
}

BooleanSetFunction dual(const BooleanSetFunction& v) {
  const Mask full = v.full();
  return BooleanSetFunction::from(v.n(), [&](Mask a) { return 1 - v[full & ~a]; });
}

BooleanSetFunction dual(const RealSetFunction& v) {
  for (Mask a = 0; a < v.size(); ++a) {
    if (v[a] != 0.0 && v[a] != 1.0)
      throw NonBooleanInput(fmt::format(
          "dual is defined for boolean set functions only; value {} at {}", v[a], format_subset(a)));
  }
  const Mask full = v.full();
  return BooleanSetFunction::from(v.n(), [&](Mask a) { return v[full & ~a] == 1.0 ? 0 : 1; });
}

std::string ValidationReport::describe() const {
  if (valid()) return "semicoherent";
  if (!monotone)
    return fmt::format("not monotone: v({}) > v({})", format_subset(violation->first),
                       format_subset(violation->second));
  return "constant structure function";
}

ValidationReport validate_semicoherent(const BooleanSetFunction& v) {
  ValidationReport report;
  for (Mask a = 0; a < v.size(); ++a) {
    if (v[a] > 1) throw NonBooleanInput(fmt::format("value at {} is not boolean", format_subset(a)));
  }
  report.violation = first_monotonicity_violation(v);
  report.monotone = !report.violation.has_value();
  report.nonconstant = v[0] == 0 && v[v.full()] == 1;
  return report;
}

}  // namespace relilat
