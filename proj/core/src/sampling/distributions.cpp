#include "infocap/sampling/distributions.hpp"

#include <cmath>
#include <numbers>

#include "infocap/errors.hpp"

namespace infocap::sampling {

void Distribution::validate() const {
  switch (kind) {
    case DistributionKind::normal:
      if (!(b >= 0)) throw ConfigError("normal: stddev must be >= 0");
      break;
    case DistributionKind::uniform:
      if (!(b >= a)) throw ConfigError("uniform: hi must be >= lo");
      break;
    case DistributionKind::bernoulli:
      if (!(a >= 0 && a <= 1)) throw ConfigError("bernoulli: p must lie in [0, 1]");
      break;
    case DistributionKind::cauchy:
      if (!(b > 0)) throw ConfigError("cauchy: scale must be > 0");
      break;
    case DistributionKind::exponential:
      if (!(a > 0)) throw ConfigError("exponential: rate must be > 0");
      break;
  }
}

double Distribution::sample(Rng& rng) const {
  switch (kind) {
    case DistributionKind::normal: return a + b * rng.normal();
    case DistributionKind::uniform: return rng.uniform(a, b);
    case DistributionKind::bernoulli: return rng.uniform() < a ? 1.0 : 0.0;
    case DistributionKind::cauchy:
      return a + b * std::tan(std::numbers::pi * (rng.uniform_open() - 0.5));
    case DistributionKind::exponential: return -std::log(rng.uniform_open()) / a;
  }
  return 0;
}

Eigen::MatrixXd draw(const Distribution& dist, Eigen::Index rows, Eigen::Index cols, Rng& rng) {
  dist.validate();
  Eigen::MatrixXd out(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) out(i, j) = dist.sample(rng);
  }
  return out;
}

}  // namespace infocap::sampling
