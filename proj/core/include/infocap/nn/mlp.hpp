#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "infocap/nn/activation.hpp"

namespace infocap::nn {

/// One dense layer: post = act(weight * in + bias).
struct Layer {
  Matrix weight;  // out x in
  Vector bias;    // out
  Activation activation;
};

/// Gradients of a scalar with respect to every parameter of an Mlp, plus the
/// gradient with respect to the network input (needed when the input itself
/// is produced by another trainable network).
struct ParameterGradients {
  std::vector<Matrix> weights;
  std::vector<Vector> biases;
  Matrix input;

  /// Largest absolute entry over all parameter gradients.
  double max_abs() const;
  void scale(double factor);
};

/// Dense feed-forward network with exact reverse-mode gradients.
///
/// Samples are stored column-wise: a batch is a (features x N) matrix. All
/// arithmetic is done in double precision.
///
/// forward() caches the activations needed by backward(); evaluate() is the
/// const, cache-free path that may be called concurrently on a shared network.
class Mlp {
 public:
  /// Weights are drawn from U(-s, s) with s = sqrt(6 / (fan_in + fan_out)),
  /// biases start at zero. Identical seeds give bit-identical parameters.
  Mlp(std::vector<int> layer_dims, std::vector<Activation> activations, std::uint64_t seed);

  const std::vector<int>& dims() const noexcept { return dims_; }
  int input_dim() const noexcept { return dims_.front(); }
  int output_dim() const noexcept { return dims_.back(); }
  std::size_t num_layers() const noexcept { return layers_.size(); }
  Layer& layer(std::size_t l) { return layers_.at(l); }
  const Layer& layer(std::size_t l) const { return layers_.at(l); }

  /// Forward pass that caches pre-activations for a subsequent backward().
  const Matrix& forward(const Matrix& input);

  /// Forward pass without touching the cache.
  Matrix evaluate(const Matrix& input) const;

  /// Gradients of sum_j <upstream_j, output_j> for the batch seen by the last
  /// forward(). Throws StateError if no forward() preceded it. Uses internal
  /// scratch buffers, so calls on one network must not overlap.
  ParameterGradients backward(const Matrix& upstream) const;

  bool has_cache() const noexcept { return cache_valid_; }
  void clear_cache() noexcept { cache_valid_ = false; }

  std::size_t parameter_count() const;
  /// Parameters flattened layer by layer: weight (row-major) then bias.
  std::vector<double> flatten() const;
  void unflatten(std::span<const double> values);
  /// Flattens gradients in the same order as flatten().
  static std::vector<double> flatten(const ParameterGradients& grads);

 private:
  std::vector<int> dims_;
  std::vector<Layer> layers_;

  bool cache_valid_ = false;
  Matrix cached_input_;
  std::vector<Matrix> cached_pre_;
  std::vector<Matrix> cached_post_;
  mutable Matrix scratch_delta_;
  mutable Matrix scratch_next_;
  mutable Matrix scratch_deriv_;
};

}  // namespace infocap::nn
