#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "infocap/sampling/rng.hpp"
#include "infocap/sampling/shuffle.hpp"

namespace infocap::sampling {

using Matrix = Eigen::MatrixXd;

/// N paired samples stored column-wise: x is d_x x N, y is d_y x N.
struct Batch {
  Matrix x;
  Matrix y;

  std::size_t size() const noexcept { return static_cast<std::size_t>(x.cols()); }
  /// Rows of [x; y], i.e. the discriminator input layout.
  Matrix stacked() const;
};

/// x, n ~ N(0, I_d) independent; y = rho * x + sqrt(1 - rho^2) * n.
/// Throws ConfigError unless 0 <= rho < 1.
Batch gaussian_pair_batch(int d, double rho, std::size_t n, Rng& rng);

/// Pairs (x_i, y_perm[i]). Throws ConfigError on a length mismatch.
Batch marginal_view(const Batch& batch, const Shuffle& shuffle);

/// Column-wise Pearson correlation between row `row` of x and of y.
double sample_correlation(const Batch& batch, int row = 0);

}  // namespace infocap::sampling
