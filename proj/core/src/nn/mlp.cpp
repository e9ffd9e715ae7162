#include "infocap/nn/mlp.hpp"

#include <cmath>
#include <string>

#include "infocap/errors.hpp"
#include "infocap/sampling/rng.hpp"

namespace infocap::nn {

namespace {

void require_finite(const Matrix& m, std::size_t layer, const char* what) {
  if (!m.allFinite()) {
    throw NumericError(std::string("non-finite ") + what + " at layer " + std::to_string(layer));
  }
}

}  // namespace

double ParameterGradients::max_abs() const {
  double m = 0;
  for (const auto& w : weights) m = std::max(m, w.cwiseAbs().maxCoeff());
  for (const auto& b : biases) m = std::max(m, b.cwiseAbs().maxCoeff());
  return m;
}

void ParameterGradients::scale(double factor) {
  for (auto& w : weights) w *= factor;
  for (auto& b : biases) b *= factor;
  input *= factor;
}

Mlp::Mlp(std::vector<int> layer_dims, std::vector<Activation> activations, std::uint64_t seed)
    : dims_(std::move(layer_dims)) {
  if (dims_.size() < 2) throw ConfigError("Mlp needs at least two layer dims");
  if (activations.size() != dims_.size() - 1) {
    throw ConfigError("Mlp: " + std::to_string(activations.size()) + " activations for " +
                      std::to_string(dims_.size() - 1) + " layers");
  }
  for (int d : dims_) {
    if (d <= 0) throw ConfigError("Mlp layer dims must be positive");
  }

  sampling::Rng rng(seed);
  layers_.reserve(activations.size());
  for (std::size_t l = 0; l + 1 < dims_.size(); ++l) {
    const int in = dims_[l];
    const int out = dims_[l + 1];
    const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
    Layer layer{Matrix(out, in), Vector::Zero(out), activations[l]};
    for (int r = 0; r < out; ++r) {
      for (int c = 0; c < in; ++c) layer.weight(r, c) = rng.uniform(-limit, limit);
    }
    layers_.push_back(std::move(layer));
  }
  cached_pre_.resize(layers_.size());
  cached_post_.resize(layers_.size());
}

const Matrix& Mlp::forward(const Matrix& input) {
  if (input.rows() != dims_.front()) {
    throw ConfigError("Mlp::forward: input has " + std::to_string(input.rows()) +
                      " rows, expected " + std::to_string(dims_.front()));
  }
  cache_valid_ = false;
  cached_input_ = input;
  const Matrix* current = &cached_input_;
  require_finite(*current, 0, "input");
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    Matrix& post = cached_post_[l];
    if (layer.activation.kind == ActivationKind::relu) {
      // relu' is read off the output sign, so no pre-activation copy is kept.
      post.noalias() = layer.weight * *current;
      post = (post.colwise() + layer.bias).cwiseMax(0.0);
    } else {
      Matrix& pre = cached_pre_[l];
      pre.noalias() = layer.weight * *current;
      pre.colwise() += layer.bias;
      apply_activation(layer.activation, pre, post);
    }
    current = &post;
  }
  require_finite(*current, layers_.size(), "output");
  cache_valid_ = true;
  return *current;
}

Matrix Mlp::evaluate(const Matrix& input) const {
  if (input.rows() != dims_.front()) {
    throw ConfigError("Mlp::evaluate: input has " + std::to_string(input.rows()) +
                      " rows, expected " + std::to_string(dims_.front()));
  }
  Matrix current = input;
  Matrix pre;
  require_finite(current, 0, "input");
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    const Layer& layer = layers_[l];
    pre.noalias() = layer.weight * current;
    pre.colwise() += layer.bias;
    apply_activation(layer.activation, pre, current);
  }
  require_finite(current, layers_.size(), "output");
  return current;
}

ParameterGradients Mlp::backward(const Matrix& upstream) const {
  if (!cache_valid_) throw StateError("Mlp::backward called without a preceding forward");
  const Matrix& out = cached_post_.back();
  if (upstream.rows() != out.rows() || upstream.cols() != out.cols()) {
    throw ConfigError("Mlp::backward: upstream gradient shape mismatch");
  }

  ParameterGradients grads;
  grads.weights.resize(layers_.size());
  grads.biases.resize(layers_.size());

  // Scratch buffers persist across calls; batches of N^2 pairs make these
  // several MB and fresh allocations would fault in new pages every step.
  Matrix& delta = scratch_delta_;
  Matrix& next = scratch_next_;
  Matrix& deriv = scratch_deriv_;
  delta = upstream;
  for (std::size_t l = layers_.size(); l-- > 0;) {
    const Layer& layer = layers_[l];
    if (layer.activation.kind == ActivationKind::relu) {
      delta = (cached_post_[l].array() > 0.0).select(delta.array(), 0.0).matrix();
    } else if (layer.activation.kind != ActivationKind::identity) {
      activation_derivative(layer.activation, cached_pre_[l], cached_post_[l], deriv);
      delta.array() *= deriv.array();
    }
    const Matrix& below = l == 0 ? cached_input_ : cached_post_[l - 1];
    grads.weights[l].noalias() = delta * below.transpose();
    grads.biases[l].noalias() = delta * Vector::Ones(delta.cols());
    next.noalias() = layer.weight.transpose() * delta;
    delta.swap(next);
  }
  grads.input = delta;
  return grads;
}

std::size_t Mlp::parameter_count() const {
  std::size_t n = 0;
  for (const auto& layer : layers_) n += layer.weight.size() + layer.bias.size();
  return n;
}

std::vector<double> Mlp::flatten() const {
  std::vector<double> out;
  out.reserve(parameter_count());
  for (const auto& layer : layers_) {
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) out.push_back(layer.weight(r, c));
    }
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) out.push_back(layer.bias(r));
  }
  return out;
}

void Mlp::unflatten(std::span<const double> values) {
  if (values.size() != parameter_count()) {
    throw ConfigError("Mlp::unflatten: expected " + std::to_string(parameter_count()) +
                      " values, got " + std::to_string(values.size()));
  }
  std::size_t k = 0;
  for (auto& layer : layers_) {
    for (Eigen::Index r = 0; r < layer.weight.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weight.cols(); ++c) layer.weight(r, c) = values[k++];
    }
    for (Eigen::Index r = 0; r < layer.bias.size(); ++r) layer.bias(r) = values[k++];
  }
  cache_valid_ = false;
}

std::vector<double> Mlp::flatten(const ParameterGradients& grads) {
  std::vector<double> out;
  for (std::size_t l = 0; l < grads.weights.size(); ++l) {
    const auto& w = grads.weights[l];
    for (Eigen::Index r = 0; r < w.rows(); ++r) {
      for (Eigen::Index c = 0; c < w.cols(); ++c) out.push_back(w(r, c));
    }
    const auto& b = grads.biases[l];
    for (Eigen::Index r = 0; r < b.size(); ++r) out.push_back(b(r));
  }
  return out;
}

}  // namespace infocap::nn
