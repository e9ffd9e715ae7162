#pragma once

#include <cstdint>
#include <vector>

#include "infocap/nn/mlp.hpp"

namespace infocap::nn {

struct AdamConfig {
  double lr = 5e-4;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Optimizer state for one network. Moments start at zero.
struct AdamState {
  AdamConfig config;
  std::vector<Matrix> m_weights, v_weights;
  std::vector<Vector> m_biases, v_biases;
  std::uint64_t step_count = 0;

  static AdamState for_network(const Mlp& net, AdamConfig config = {});
};

/// Bias-corrected Adam update, descending along `grads`. To ascend a value
/// function pass the gradient of its negation.
void adam_step(Mlp& net, const ParameterGradients& grads, AdamState& state);

}  // namespace infocap::nn
