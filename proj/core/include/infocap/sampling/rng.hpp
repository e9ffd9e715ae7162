#pragma once

#include <array>
#include <cstdint>
#include <limits>

namespace infocap::sampling {

/// xoshiro256** seeded through splitmix64.
///
/// Every (seed, stream) pair selects an independent sequence; split() derives
/// child streams for parallel work. Distribution sampling is implemented here
/// rather than through <random> distributions so that streams are identical
/// across standard library implementations.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() { return next(); }

  std::uint64_t next();

  /// Child generator for stream `index`; does not advance this generator.
  Rng split(std::uint64_t index) const;

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform in (0, 1).
  double uniform_open();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Unbiased integer in [0, n).
  std::uint64_t below(std::uint64_t n);
  /// Standard normal (Box-Muller, second variate cached).
  double normal();
  double normal(double mean, double stddev) { return mean + stddev * normal(); }

  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t stream() const noexcept { return stream_; }

 private:
  std::array<std::uint64_t, 4> s_{};
  std::uint64_t seed_;
  std::uint64_t stream_;
  bool has_spare_ = false;
  double spare_ = 0;
};

/// splitmix64 finalizer, exposed for deriving per-cell seeds.
std::uint64_t mix64(std::uint64_t x);

}  // namespace infocap::sampling
