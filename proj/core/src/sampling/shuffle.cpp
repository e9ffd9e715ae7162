#include "infocap/sampling/shuffle.hpp"

#include <numeric>
#include <string>

#include "infocap/errors.hpp"

namespace infocap::sampling {

std::size_t count_fixed_points(const std::vector<std::size_t>& perm) {
  std::size_t k = 0;
  for (std::size_t i = 0; i < perm.size(); ++i) k += perm[i] == i;
  return k;
}

Shuffle Shuffle::identity(std::size_t n) {
  Shuffle s;
  s.perm.resize(n);
  std::iota(s.perm.begin(), s.perm.end(), std::size_t{0});
  s.fixed_points = n;
  return s;
}

Shuffle Shuffle::from(std::vector<std::size_t> perm) {
  std::vector<bool> seen(perm.size(), false);
  for (std::size_t v : perm) {
    if (v >= perm.size() || seen[v]) throw ConfigError("Shuffle::from: not a permutation");
    seen[v] = true;
  }
  Shuffle s;
  s.fixed_points = count_fixed_points(perm);
  s.perm = std::move(perm);
  return s;
}

std::string_view to_string(DerangementMode mode) {
  return mode == DerangementMode::shift ? "shift" : "random";
}

DerangementMode parse_derangement_mode(std::string_view text) {
  if (text == "shift") return DerangementMode::shift;
  if (text == "random") return DerangementMode::random;
  throw ConfigError("unknown derangement mode '" + std::string(text) + "'");
}

Shuffle permute_naive(std::size_t n, Rng& rng) {
  Shuffle s = Shuffle::identity(n);
  for (std::size_t i = n; i > 1; --i) {
    const std::size_t j = rng.below(i);
    std::swap(s.perm[i - 1], s.perm[j]);
  }
  s.fixed_points = count_fixed_points(s.perm);
  return s;
}

Shuffle derange(std::size_t n, DerangementMode mode, Rng& rng) {
  if (n < 2) throw ConfigError("derange: N must be >= 2, got " + std::to_string(n));
  if (mode == DerangementMode::shift) {
    Shuffle s;
    s.perm.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.perm[i] = (i + 1) % n;
    return s;
  }
  for (int attempt = 0; attempt < kMaxDerangementTries; ++attempt) {
    Shuffle s = permute_naive(n, rng);
    if (s.fixed_points == 0) return s;
  }
  throw NumericError("derange: no derangement after " + std::to_string(kMaxDerangementTries) +
                     " attempts");
}

}  // namespace infocap::sampling
