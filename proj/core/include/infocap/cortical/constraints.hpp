#pragma once

#include <optional>
#include <string_view>

#include <Eigen/Dense>

namespace infocap::cortical {

using Matrix = Eigen::MatrixXd;

enum class PeakMode { penalty, hard };
enum class AverageMode { hard, penalty };

/// Per-sample cost whose batch mean is bounded by the average constraint.
///   power       ||x||^2
///   cauchy_log  log(((A+g)/A)^2 + ||x||^2/A^2)        (bound usually log 4)
///   inverse     sum_k (1/x_k - 1)                      (fading amplitude form)
enum class CostKind { power, cauchy_log, inverse };

std::string_view to_string(PeakMode m);
std::string_view to_string(AverageMode m);
std::string_view to_string(CostKind c);
PeakMode parse_peak_mode(std::string_view text);
AverageMode parse_average_mode(std::string_view text);
CostKind parse_cost_kind(std::string_view text);

struct ConstraintSpec {
  std::optional<double> peak_A;
  PeakMode peak_mode = PeakMode::penalty;
  double lambda_A = 1.0;

  std::optional<double> avg_P;
  AverageMode avg_mode = AverageMode::hard;
  double lambda_P = 1.0;
  CostKind cost = CostKind::power;
  double cost_A = 1.0;
  double cost_gamma = 1.0;

  /// ConfigError for non-positive bounds, negative weights or hard scaling of
  /// a non-power cost.
  void validate() const;
};

double sample_cost(const ConstraintSpec& spec, const Eigen::VectorXd& x);

/// Hinge penalties of the terms configured in penalty mode:
///   lambda_A mean max(||x||^2 - A^2, 0) + lambda_P max(mean cost(x) - P, 0).
double constraint_penalty(const Matrix& x, const ConstraintSpec& spec);
/// d constraint_penalty / dx (subgradient 0 at the hinge).
Matrix penalty_gradient(const Matrix& x, const ConstraintSpec& spec);

/// Hard transforms in order: radial A tanh(||u||) squashing for a hard peak,
/// then per-batch RMS scaling to sqrt(P) for a hard average power.
Matrix apply_hard_constraints(const Matrix& u, const ConstraintSpec& spec);
/// Gradient with respect to u given the gradient with respect to the output of
/// apply_hard_constraints(u).
Matrix hard_constraints_pullback(const Matrix& u, const Matrix& grad_x, const ConstraintSpec& spec);

}  // namespace infocap::cortical
