#ifndef RELILAT_MCORACLE_HPP
#define RELILAT_MCORACLE_HPP

#include <cstddef>
#include <cstdint>

#include "relilat/latpoly.hpp"
#include "relilat/lifetimes.hpp"

namespace relilat {

struct McEstimate {
  double mean = 0.0;
  /// Sample standard deviation (n - 1 denominator) over √n_samples.
  double std_error = 0.0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Draws are taken in blocks of this many samples; block b uses its own mt19937_64 seeded
/// with splitmix64(seed + b), so results do not depend on how blocks are scheduled.
inline constexpr std::size_t kMcBlockSize = 4096;

std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block);

/// Mean of Ind(p_w(T) > t). Every sample also evaluates φ_{v_t}(X(t)) and throws
/// IdentityViolation if the two indicators ever differ. RangeError if n_samples < 100.
McEstimate estimate_reliability(const WeightedLatticePolynomial& p, const JointLifetimeModel& j, double t,
                                std::size_t n_samples, std::uint64_t seed);

/// Mean of Ind(p_w(T) <= t), with the same per-sample check.
McEstimate estimate_distribution(const WeightedLatticePolynomial& p, const JointLifetimeModel& j, double t,
                                 std::size_t n_samples, std::uint64_t seed);

/// Mean of p_w(T). InfiniteSample if a sampled system lifetime is infinite.
McEstimate estimate_mttf(const WeightedLatticePolynomial& p, const JointLifetimeModel& j, std::size_t n_samples,
                         std::uint64_t seed);

}  // namespace relilat

#endif  // RELILAT_MCORACLE_HPP
