#include "infocap/nn/adam.hpp"

#include <cmath>

#include "infocap/errors.hpp"

namespace infocap::nn {

AdamState AdamState::for_network(const Mlp& net, AdamConfig config) {
  AdamState s;
  s.config = config;
  for (std::size_t l = 0; l < net.num_layers(); ++l) {
    const auto& layer = net.layer(l);
    s.m_weights.push_back(Matrix::Zero(layer.weight.rows(), layer.weight.cols()));
    s.v_weights.push_back(Matrix::Zero(layer.weight.rows(), layer.weight.cols()));
    s.m_biases.push_back(Vector::Zero(layer.bias.size()));
    s.v_biases.push_back(Vector::Zero(layer.bias.size()));
  }
  return s;
}

namespace {

template <typename Param>
void update(Param& p, const Param& g, Param& m, Param& v, const AdamConfig& c, double bc1,
            double bc2) {
  m = c.beta1 * m + (1.0 - c.beta1) * g;
  v = c.beta2 * v + (1.0 - c.beta2) * g.cwiseProduct(g);
  p.array() -= c.lr * (m.array() / bc1) / ((v.array() / bc2).sqrt() + c.eps);
}

}  // namespace

void adam_step(Mlp& net, const ParameterGradients& grads, AdamState& state) {
  const std::size_t n = net.num_layers();
  if (grads.weights.size() != n || grads.biases.size() != n || state.m_weights.size() != n) {
    throw ConfigError("adam_step: layer count mismatch");
  }
  for (std::size_t l = 0; l < n; ++l) {
    const auto& layer = net.layer(l);
    if (grads.weights[l].rows() != layer.weight.rows() ||
        grads.weights[l].cols() != layer.weight.cols() ||
        grads.biases[l].size() != layer.bias.size() ||
        state.m_weights[l].rows() != layer.weight.rows() ||
        state.m_weights[l].cols() != layer.weight.cols()) {
      throw ConfigError("adam_step: shape mismatch at layer " + std::to_string(l));
    }
  }

  state.step_count += 1;
  const auto t = static_cast<double>(state.step_count);
  const double bc1 = 1.0 - std::pow(state.config.beta1, t);
  const double bc2 = 1.0 - std::pow(state.config.beta2, t);
  for (std::size_t l = 0; l < n; ++l) {
    auto& layer = net.layer(l);
    update(layer.weight, grads.weights[l], state.m_weights[l], state.v_weights[l], state.config,
           bc1, bc2);
    update(layer.bias, grads.biases[l], state.m_biases[l], state.v_biases[l], state.config, bc1,
           bc2);
  }
  net.clear_cache();
}

}  // namespace infocap::nn
