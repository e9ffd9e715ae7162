#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "infocap/sampling/rng.hpp"

namespace infocap::sampling {

/// A permutation of 0..N-1 together with its number of fixed points.
struct Shuffle {
  std::vector<std::size_t> perm;
  std::size_t fixed_points = 0;

  std::size_t size() const noexcept { return perm.size(); }
  bool is_derangement() const noexcept { return fixed_points == 0; }

  static Shuffle identity(std::size_t n);
  /// Wraps an explicit permutation. Throws ConfigError if it is not a bijection.
  static Shuffle from(std::vector<std::size_t> perm);
};

enum class DerangementMode { random, shift };

std::string_view to_string(DerangementMode mode);
DerangementMode parse_derangement_mode(std::string_view text);

/// Maximum rejection-sampling attempts before derange(random) gives up.
inline constexpr int kMaxDerangementTries = 1000;

/// Permutation without fixed points. `shift` returns i -> (i+1) mod N;
/// `random` draws uniform permutations until one has no fixed point.
/// Throws ConfigError for N < 2.
Shuffle derange(std::size_t n, DerangementMode mode, Rng& rng);

/// Uniform random permutation (Fisher-Yates) with exact fixed-point count.
Shuffle permute_naive(std::size_t n, Rng& rng);

std::size_t count_fixed_points(const std::vector<std::size_t>& perm);

}  // namespace infocap::sampling
