#ifndef RELILAT_SETFUN_HPP
#define RELILAT_SETFUN_HPP

#include <bit>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "relilat/errors.hpp"

namespace relilat {

/// Bit-set over components 1..n: bit i-1 is set iff component i belongs to the subset.
using Mask = std::uint32_t;

inline constexpr int kMaxComponents = 24;
inline constexpr double kInf = std::numeric_limits<double>::infinity();

inline int cardinality(Mask a) { return std::popcount(a); }
inline Mask full_mask(int n) { return n == 0 ? 0u : (~Mask{0} >> (32 - n)); }
inline Mask complement(Mask a, int n) { return full_mask(n) & ~a; }
inline bool is_subset(Mask a, Mask b) { return (a & ~b) == 0; }

/// Builds a mask from 1-based component indices; throws RangeError on indices outside [1, n].
Mask mask_of(std::span<const int> components, int n);
/// 1-based component indices of `a`, ascending.
std::vector<int> components_of(Mask a);
/// Space-separated 1-based indices ("1 3 5"); the empty set renders as "{}".
std::string format_subset(Mask a);

void check_component_count(int n);

/// Dense function on the subset lattice of [n], indexed by Mask in ascending order.
template <class T>
class SetFunction {
 public:
  using value_type = T;

  SetFunction() = default;
  explicit SetFunction(int n, T fill = T{}) : n_(n) {
    check_component_count(n);
    values_.assign(std::size_t{1} << n, fill);
  }
  SetFunction(int n, std::vector<T> values) : n_(n), values_(std::move(values)) {
    check_component_count(n);
    if (values_.size() != (std::size_t{1} << n)) {
      throw DimensionMismatch("set function on " + std::to_string(n) + " components needs " +
                              std::to_string(std::size_t{1} << n) + " values, got " +
                              std::to_string(values_.size()));
    }
  }

  template <class F>
  static SetFunction from(int n, F&& f) {
    check_component_count(n);
    std::vector<T> values(std::size_t{1} << n);
    for (Mask a = 0; a < values.size(); ++a) values[a] = static_cast<T>(f(a));
    return SetFunction(n, std::move(values));
  }

  int n() const { return n_; }
  Mask full() const { return full_mask(n_); }
  std::size_t size() const { return values_.size(); }
  const T& operator[](Mask a) const { return values_[a]; }
  std::span<const T> values() const { return values_; }

  bool operator==(const SetFunction&) const = default;

 private:
  int n_ = 0;
  std::vector<T> values_;
};

using BooleanSetFunction = SetFunction<std::uint8_t>;
/// Möbius coefficients of a boolean set function, kept as exact integers.
using MobiusTransform = SetFunction<std::int64_t>;
using RealSetFunction = SetFunction<double>;

namespace detail {

template <class T>
void mobius_in_place(std::vector<T>& values, int n) {
  const Mask size = Mask{1} << n;
  for (int i = 0; i < n; ++i) {
    const Mask bit = Mask{1} << i;
    for (Mask a = 0; a < size; ++a)
      if (a & bit) values[a] -= values[a ^ bit];
  }
}

template <class T>
void zeta_in_place(std::vector<T>& values, int n) {
  const Mask size = Mask{1} << n;
  for (int i = 0; i < n; ++i) {
    const Mask bit = Mask{1} << i;
    for (Mask a = 0; a < size; ++a)
      if (a & bit) values[a] += values[a ^ bit];
  }
}

}  // namespace detail

MobiusTransform mobius_transform(const BooleanSetFunction& v);
MobiusTransform mobius_transform(const MobiusTransform& v);
RealSetFunction mobius_transform(const RealSetFunction& v);

MobiusTransform zeta_transform(const MobiusTransform& m);
RealSetFunction zeta_transform(const RealSetFunction& m);

/// Narrows an integer-valued set function to boolean; NonBooleanInput if any value is outside {0,1}.
BooleanSetFunction as_boolean(const MobiusTransform& v);

/// v*(A) = 1 - v([n] \ A).
BooleanSetFunction dual(const BooleanSetFunction& v);
/// Accepts only {0,1}-valued input; lattice-valued weights have no set-function dual.
BooleanSetFunction dual(const RealSetFunction& v);

struct ValidationReport {
  bool monotone = true;
  bool nonconstant = true;
  /// First pair (A, B) with A ⊂ B and v(A) > v(B), scanning masks ascending.
  std::optional<std::pair<Mask, Mask>> violation;

  bool valid() const { return monotone && nonconstant; }
  std::string describe() const;
};

ValidationReport validate_semicoherent(const BooleanSetFunction& v);

/// First (A, A ∪ {i}) with values[A] > values[A ∪ {i}], or nullopt if nondecreasing.
template <class T>
std::optional<std::pair<Mask, Mask>> first_monotonicity_violation(const SetFunction<T>& f) {
  for (Mask a = 0; a < f.size(); ++a) {
    for (int i = 0; i < f.n(); ++i) {
      const Mask bit = Mask{1} << i;
      if (a & bit) continue;
      if (f[a] > f[a | bit]) return std::pair{a, a | bit};
    }
  }
  return std::nullopt;
}

}  // namespace relilat

#endif  // RELILAT_SETFUN_HPP
