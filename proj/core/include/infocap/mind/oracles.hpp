#pragma once

#include <cstddef>
#include <functional>

#include <Eigen/Dense>

#include "infocap/mind/alphabet.hpp"

namespace infocap::mind {

/// log p(y | x).
using LogLikelihoodFn = std::function<double(const Eigen::VectorXd& y, const Eigen::VectorXd& x)>;

/// argmax_i prior_i p(y | x_i); ties go to the lowest index.
std::size_t map_oracle(const LogLikelihoodFn& loglik, const Alphabet& alphabet, const Eigen::VectorXd& y);
/// argmax_i p(y | x_i), ignoring the prior.
std::size_t maxl_oracle(const LogLikelihoodFn& loglik, const Alphabet& alphabet, const Eigen::VectorXd& y);

/// Exact posterior P(x_i | y) under the alphabet prior.
Eigen::VectorXd exact_posterior(const LogLikelihoodFn& loglik, const Alphabet& alphabet,
                                const Eigen::VectorXd& y);

}  // namespace infocap::mind
