#pragma once

#include <string_view>

#include <Eigen/Dense>

#include "infocap/sampling/rng.hpp"

namespace infocap::sampling {

enum class DistributionKind { normal, uniform, bernoulli, cauchy, exponential };

/// Distribution tag plus two parameters, whose meaning depends on the tag:
///   normal(mean, stddev), uniform(lo, hi), bernoulli(p, -),
///   cauchy(location, scale), exponential(rate, -).
struct Distribution {
  DistributionKind kind;
  double a = 0;
  double b = 1;

  static Distribution normal(double mean = 0, double stddev = 1) { return {DistributionKind::normal, mean, stddev}; }
  static Distribution uniform(double lo = 0, double hi = 1) { return {DistributionKind::uniform, lo, hi}; }
  static Distribution bernoulli(double p) { return {DistributionKind::bernoulli, p, 0}; }
  static Distribution cauchy(double location, double scale) { return {DistributionKind::cauchy, location, scale}; }
  static Distribution exponential(double rate) { return {DistributionKind::exponential, rate, 0}; }

  /// Throws ConfigError for invalid parameters.
  void validate() const;
  /// One draw. Cauchy uses the tangent transform, Bernoulli a threshold.
  double sample(Rng& rng) const;
};

/// rows x cols i.i.d. draws.
Eigen::MatrixXd draw(const Distribution& dist, Eigen::Index rows, Eigen::Index cols, Rng& rng);

}  // namespace infocap::sampling
