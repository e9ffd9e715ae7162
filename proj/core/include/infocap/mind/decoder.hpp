#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "infocap/channels/scenario.hpp"
#include "infocap/mind/alphabet.hpp"
#include "infocap/nn/adam.hpp"
#include "infocap/nn/mlp.hpp"
#include "infocap/sampling/rng.hpp"

namespace infocap::mind {

using Matrix = Eigen::MatrixXd;

struct PosteriorTable {
  Eigen::VectorXd raw;         // (1 - D_i) / D_i
  Eigen::VectorXd normalized;  // raw / sum(raw)
};

/// Posterior table implied by discriminator outputs D_i in (0, 1).
PosteriorTable posterior_from_discriminator(const Eigen::VectorXd& d);
/// argmax of the normalized posterior, lowest index on ties.
std::size_t decode_from_discriminator(const Eigen::VectorXd& d);

/// Entropy and error estimates from normalized posteriors (M x N, one column
/// per received sample). All entropies in bits.
struct EntropyEstimate {
  double h_x_bits = 0;
  double h_x_given_y_bits = 0;
  double mi_bits = 0;
  double error_probability = 0;
};
EntropyEstimate estimate_entropies(const Matrix& posteriors);

/// Supervised value: mean_j [ sum_i log D_ij + log(1 - D_{label_j, j}) ].
double mind_value_supervised(const Matrix& d, const std::vector<std::size_t>& labels);

/// Unsupervised value for a scalar discriminator D(x, y):
///   |T_x| mean_{(u,y)} log D(u, y) + mean_{(x,y)} log(1 - D(x, y)),
/// with u drawn uniformly over the input support.
double mind_value_unsupervised(const std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)>& d,
                               const Matrix& x_joint, const Matrix& y_joint, const Matrix& u_marg,
                               const Matrix& y_marg, double support_measure);

struct DecoderConfig {
  std::vector<int> hidden{100, 100};
  nn::Activation hidden_activation = nn::Activation::relu();
  nn::AdamConfig adam{1e-3, 0.9, 0.999, 1e-8};
  std::size_t batch = 512;
  double abort_threshold = 1e6;
};

/// Network from channel outputs to M discriminator values D_i = sigmoid(raw_i).
class MindDecoder {
 public:
  MindDecoder(Alphabet alphabet, int output_dim, DecoderConfig config, std::uint64_t seed);

  const Alphabet& alphabet() const noexcept { return alphabet_; }
  const DecoderConfig& config() const noexcept { return config_; }
  nn::Mlp& network() noexcept { return net_; }
  long iterations() const noexcept { return iteration_; }

  /// One ascent step on the supervised value; returns the value before the step.
  double train_step(const Matrix& y, const std::vector<std::size_t>& labels);
  /// `iters` steps on fresh batches drawn from the prior through `channel`.
  std::vector<double> train(const channels::Channel& channel, long iters, sampling::Rng& rng);

  /// M x N discriminator outputs.
  Matrix discriminator(const Matrix& y) const;
  /// M x N normalized posteriors.
  Matrix posteriors(const Matrix& y) const;
  PosteriorTable posterior(const Eigen::VectorXd& y) const;
  std::size_t decode(const Eigen::VectorXd& y) const;
  std::vector<std::size_t> decode_batch(const Matrix& y) const;
  EntropyEstimate estimate_entropies(const Matrix& y) const;

 private:
  Alphabet alphabet_;
  DecoderConfig config_;
  nn::Mlp net_;
  nn::AdamState adam_;
  long iteration_ = 0;
};

}  // namespace infocap::mind
