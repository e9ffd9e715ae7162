#include "infocap/estimators/analytic.hpp"

#include <cmath>

#include "infocap/errors.hpp"

namespace infocap::estimators {

double variance_gaussian(double mi_nats, std::size_t m) {
  if (!(mi_nats >= 0) || m == 0) throw ConfigError("variance_gaussian: need I >= 0 and M >= 1");
  return -std::expm1(-2.0 * mi_nats) / static_cast<double>(m);
}

double permuted_optimum(double ratio, std::size_t n, std::size_t k) {
  if (n == 0) throw ConfigError("permuted_optimum: N must be >= 1");
  if (k > n) throw ConfigError("permuted_optimum: K must not exceed N");
  if (!(ratio > 0)) throw ConfigError("permuted_optimum: ratio must be positive");
  const double nn = static_cast<double>(n);
  const double kk = static_cast<double>(k);
  return nn * ratio / (kk * ratio + nn - kk);
}

void validate_pmf(const Eigen::MatrixXd& pmf) {
  if (pmf.size() == 0) throw ConfigError("pmf is empty");
  if ((pmf.array() < 0).any() || !pmf.allFinite()) throw ConfigError("pmf has negative or non-finite entries");
  if (std::abs(pmf.sum() - 1.0) > 1e-12) throw ConfigError("pmf does not sum to 1");
}

double discrete_mutual_information(const Eigen::MatrixXd& pmf) {
  validate_pmf(pmf);
  const Eigen::VectorXd px = pmf.rowwise().sum();
  const Eigen::RowVectorXd py = pmf.colwise().sum();
  double s = 0;
  for (Eigen::Index i = 0; i < pmf.rows(); ++i) {
    for (Eigen::Index j = 0; j < pmf.cols(); ++j) {
      const double p = pmf(i, j);
      if (p > 0) s += p * std::log(p / (px(i) * py(j)));
    }
  }
  return s;
}

double permuted_value_kl(const Eigen::MatrixXd& pmf, const Eigen::MatrixXd& d, std::size_t n,
                         std::size_t k) {
  validate_pmf(pmf);
  if (d.rows() != pmf.rows() || d.cols() != pmf.cols()) throw ConfigError("permuted_value_kl: shape mismatch");
  if (n == 0 || k > n) throw ConfigError("permuted_value_kl: need 0 <= K <= N, N >= 1");
  const Eigen::VectorXd px = pmf.rowwise().sum();
  const Eigen::RowVectorXd py = pmf.colwise().sum();
  const double wk = static_cast<double>(k) / static_cast<double>(n);
  double v = 1.0;
  for (Eigen::Index i = 0; i < pmf.rows(); ++i) {
    for (Eigen::Index j = 0; j < pmf.cols(); ++j) {
      const double p = pmf(i, j);
      const double q = px(i) * py(j);
      if (p > 0) v += p * std::log(d(i, j));
      v -= ((1.0 - wk) * q + wk * p) * d(i, j);
    }
  }
  return v;
}

}  // namespace infocap::estimators
