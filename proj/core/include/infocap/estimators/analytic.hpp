#pragma once

#include <cstddef>

#include <Eigen/Dense>

namespace infocap::estimators {

/// Variance of the oracle-ratio f-DIME estimate on Gaussian data with M
/// samples: (1 - e^{-2I}) / M. ConfigError unless I >= 0 and M >= 1.
double variance_gaussian(double mi_nats, std::size_t m);

/// Optimal discriminator when the marginal batch is built with a permutation
/// that has K fixed points out of N: N R / (K R + N - K).
double permuted_optimum(double ratio, std::size_t n, std::size_t k);

/// ConfigError unless entries are non-negative and sum to 1 (within 1e-12).
void validate_pmf(const Eigen::MatrixXd& pmf);

/// sum p log(p / (p_x p_y)) over the support, in nats.
double discrete_mutual_information(const Eigen::MatrixXd& pmf);

/// Expected kl value function under a permutation with K fixed points, for a
/// discriminator table D over the support of `pmf`:
///   E_p[log D] - ((N-K)/N) E_{p_x p_y}[D] - (K/N) E_p[D] + 1.
double permuted_value_kl(const Eigen::MatrixXd& pmf, const Eigen::MatrixXd& d, std::size_t n,
                         std::size_t k);

}  // namespace infocap::estimators
