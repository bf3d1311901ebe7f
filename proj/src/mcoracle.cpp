#include "relilat/mcoracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "relilat/numerics.hpp"

namespace relilat {

namespace {

constexpr std::size_t kMinSamples = 100;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Runs `sample` over n draws in seeded blocks and reduces block sums in block order.
McEstimate run_blocks(const JointLifetimeModel& j, std::size_t n_samples, std::uint64_t seed,
                      const std::function<double(const std::vector<double>&)>& sample) {
  if (n_samples < kMinSamples)
    throw RangeError(fmt::format("Monte Carlo needs at least {} samples, got {}", kMinSamples, n_samples));
  CompensatedSum sum;
  CompensatedSum sum_sq;
  const std::size_t blocks = (n_samples + kMcBlockSize - 1) / kMcBlockSize;
  for (std::size_t b = 0; b < blocks; ++b) {
    Rng rng(block_seed(seed, b));
    const std::size_t count = std::min(kMcBlockSize, n_samples - b * kMcBlockSize);
    CompensatedSum block_sum;
    CompensatedSum block_sq;
    for (std::size_t k = 0; k < count; ++k) {
      const double x = sample(j.draw(rng));
      block_sum += x;
      block_sq += x * x;
    }
    sum += block_sum.value();
    sum_sq += block_sq.value();
  }
  const double n = static_cast<double>(n_samples);
  McEstimate e;
  e.n_samples = n_samples;
  e.seed = seed;
  e.mean = sum.value() / n;
  const double variance = std::max(0.0, (sum_sq.value() - n * e.mean * e.mean) / (n - 1.0));
  e.std_error = std::sqrt(variance / n);
  return e;
}

class IdentityChecker {
 public:
  IdentityChecker(const WeightedLatticePolynomial& p, double t)
      : representation_(minimal_representation(p)), structure_(threshold_structure(p, t)), t_(t) {}

  // Ind(p_w(T) > t), verified against φ_{v_t}(X(t)).
  bool alive(const std::vector<double>& lifetimes) const {
    const bool by_lifetime = representation_.eval_disjunctive(lifetimes) > t_;
    Mask state = 0;
    for (std::size_t i = 0; i < lifetimes.size(); ++i)
      if (lifetimes[i] > t_) state |= Mask{1} << i;
    const bool by_structure = structure_.tables.v[state] != 0;
    if (by_lifetime != by_structure)
      throw IdentityViolation(fmt::format("Ind(p(T) > {}) = {} but phi_v_t(X(t)) = {} at T = ({})", t_,
                                          by_lifetime, by_structure, fmt::join(lifetimes, ", ")));
    return by_lifetime;
  }

 private:
  MinimalWlpRepresentation representation_;
  ThresholdStructure structure_;
  double t_;
};

void check_dimensions(const WeightedLatticePolynomial& p, const JointLifetimeModel& j) {
  if (p.n() != j.n())
    throw DimensionMismatch(fmt::format("system has {} components but lifetime model has {}", p.n(), j.n()));
}

}  // namespace

std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) { return splitmix64(seed + block); }

McEstimate estimate_reliability(const WeightedLatticePolynomial& p, const JointLifetimeModel& j, double t,
                                std::size_t n_samples, std::uint64_t seed) {
  check_dimensions(p, j);
  const IdentityChecker checker(p, t);
  return run_blocks(j, n_samples, seed, [&](const std::vector<double>& s) { return checker.alive(s) ? 1.0 : 0.0; });
}

McEstimate estimate_distribution(const WeightedLatticePolynomial& p, const JointLifetimeModel& j, double t,
                                 std::size_t n_samples, std::uint64_t seed) {
  check_dimensions(p, j);
  const IdentityChecker checker(p, t);
  return run_blocks(j, n_samples, seed, [&](const std::vector<double>& s) { return checker.alive(s) ? 0.0 : 1.0; });
}

McEstimate estimate_mttf(const WeightedLatticePolynomial& p, const JointLifetimeModel& j, std::size_t n_samples,
                         std::uint64_t seed) {
  check_dimensions(p, j);
  const MinimalWlpRepresentation representation = minimal_representation(p);
  return run_blocks(j, n_samples, seed, [&](const std::vector<double>& s) {
    const double lifetime = representation.eval_disjunctive(s);
    if (!std::isfinite(lifetime))
      throw InfiniteSample(fmt::format("sampled system lifetime is infinite at T = ({})", fmt::join(s, ", ")));
    return lifetime;
  });
}

}  // namespace relilat
