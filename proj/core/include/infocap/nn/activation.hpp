#pragma once

#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace infocap::nn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

enum class ActivationKind { relu, leaky_relu, softplus, sigmoid, tanh, identity };

/// Element-wise activation tag. `slope` is only read for leaky_relu.
struct Activation {
  ActivationKind kind = ActivationKind::identity;
  double slope = 0.2;

  static Activation relu() { return {ActivationKind::relu}; }
  static Activation leaky_relu(double slope = 0.2) { return {ActivationKind::leaky_relu, slope}; }
  static Activation softplus() { return {ActivationKind::softplus}; }
  static Activation sigmoid() { return {ActivationKind::sigmoid}; }
  static Activation tanh() { return {ActivationKind::tanh}; }
  static Activation identity() { return {ActivationKind::identity}; }

  /// "relu", "leaky_relu(0.2)", "softplus", ...
  std::string name() const;
  /// Inverse of name(). Throws ConfigError on unknown tags.
  static Activation parse(std::string_view text);

  friend bool operator==(const Activation&, const Activation&) = default;
};

/// ln(1 + e^t) evaluated as max(t,0) + log1p(exp(-|t|)).
double softplus(double t);
double sigmoid(double t);
/// log(sigmoid(t)) without overflow.
double log_sigmoid(double t);

void apply_activation(const Activation& act, const Matrix& pre, Matrix& post);

/// d post / d pre, element-wise. `post` is the cached activation output.
void activation_derivative(const Activation& act, const Matrix& pre, const Matrix& post,
                           Matrix& out);

}  // namespace infocap::nn
