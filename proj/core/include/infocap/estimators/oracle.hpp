#pragma once

#include <functional>

#include <Eigen/Dense>

#include "infocap/estimators/estimator.hpp"

namespace infocap::estimators {

/// log p(x,y) / (p(x) p(y)). Log space keeps high-MI ratios representable.
using LogRatioFn = std::function<double(const Eigen::VectorXd& x, const Eigen::VectorXd& y)>;

/// Per-sample f-DIME readout when the discriminator sits exactly at its
/// optimum for ratio e^{log_r}: the ratio is pushed through the family's
/// optimal-discriminator map and read back with its log-ratio map.
double fdime_readout_at_ratio(const Family& family, double log_r);

/// Readout of `family` with the exact ratio substituted for the trained
/// critic. mine/smile use T = log R, nwj T = 1 + log R, cpc S_ij = log R(x_i, y_j).
MiEstimate estimate_with_oracle_ratio(const Family& family, const LogRatioFn& log_ratio,
                                      const sampling::Batch& batch,
                                      const sampling::Shuffle& shuffle);

/// Exact f-DIME readout on a finite joint pmf (rows index x, columns y),
/// weighting every support point by its probability.
double enumerated_readout(const Family& family, const Eigen::MatrixXd& pmf);

}  // namespace infocap::estimators
