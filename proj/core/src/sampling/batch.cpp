#include "infocap/sampling/batch.hpp"

#include <cmath>
#include <string>

#include "infocap/errors.hpp"

namespace infocap::sampling {

Matrix Batch::stacked() const {
  Matrix out(x.rows() + y.rows(), x.cols());
  out.topRows(x.rows()) = x;
  out.bottomRows(y.rows()) = y;
  return out;
}

Batch gaussian_pair_batch(int d, double rho, std::size_t n, Rng& rng) {
  if (!(rho >= 0.0 && rho < 1.0)) {
    throw ConfigError("gaussian_pair_batch: rho must lie in [0, 1), got " + std::to_string(rho));
  }
  if (d <= 0) throw ConfigError("gaussian_pair_batch: d must be positive");
  const auto cols = static_cast<Eigen::Index>(n);
  Batch b{Matrix(d, cols), Matrix(d, cols)};
  const double noise_scale = std::sqrt(1.0 - rho * rho);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (int i = 0; i < d; ++i) {
      const double xv = rng.normal();
      const double nv = rng.normal();
      b.x(i, j) = xv;
      b.y(i, j) = rho * xv + noise_scale * nv;
    }
  }
  return b;
}

Batch marginal_view(const Batch& batch, const Shuffle& shuffle) {
  if (shuffle.size() != batch.size()) {
    throw ConfigError("marginal_view: shuffle length " + std::to_string(shuffle.size()) +
                      " != batch size " + std::to_string(batch.size()));
  }
  Batch out{batch.x, Matrix(batch.y.rows(), batch.y.cols())};
  for (std::size_t i = 0; i < shuffle.size(); ++i) {
    out.y.col(static_cast<Eigen::Index>(i)) =
        batch.y.col(static_cast<Eigen::Index>(shuffle.perm[i]));
  }
  return out;
}

double sample_correlation(const Batch& batch, int row) {
  const Eigen::ArrayXd a = batch.x.row(row).transpose().array();
  const Eigen::ArrayXd b = batch.y.row(row).transpose().array();
  const Eigen::ArrayXd da = a - a.mean();
  const Eigen::ArrayXd db = b - b.mean();
  return (da * db).sum() / std::sqrt(da.square().sum() * db.square().sum());
}

}  // namespace infocap::sampling
