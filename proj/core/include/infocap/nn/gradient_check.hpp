#pragma once

#include <cstddef>
#include <functional>

#include "infocap/nn/mlp.hpp"

namespace infocap::nn {

/// A scalar loss of the network output. Returns the loss and, when
/// `output_grad` is non-null, writes dLoss/dOutput into it.
using ScalarLoss = std::function<double(const Matrix& output, Matrix* output_grad)>;

struct GradientCheckReport {
  double max_relative_error = 0;
  std::size_t parameters_checked = 0;
  bool passed = false;
};

inline constexpr double kGradientFloor = 1e-4;

/// Compares backward() against central differences with step `step` on every
/// parameter. Relative error is |a - n| / max(|a|, |n|, kGradientFloor).
GradientCheckReport gradient_check(Mlp& net, const Matrix& batch, const ScalarLoss& loss,
                                   double tol, double step = 1e-6);

}  // namespace infocap::nn
