#pragma once

#include <cstdint>
#include <memory>
#include <string_view>
#include <vector>

#include "infocap/channels/scenario.hpp"
#include "infocap/cortical/constraints.hpp"
#include "infocap/nn/adam.hpp"
#include "infocap/nn/mlp.hpp"
#include "infocap/sampling/rng.hpp"
#include "infocap/sampling/shuffle.hpp"

namespace infocap::cortical {

enum class LatentKind { normal, bernoulli };

std::string_view to_string(LatentKind k);
LatentKind parse_latent_kind(std::string_view text);

struct LearnerConfig {
  int latent_dim = 30;
  LatentKind latent = LatentKind::normal;
  std::vector<int> gen_hidden{100, 100, 100};
  std::vector<int> disc_hidden{100, 100};
  nn::Activation hidden_activation = nn::Activation::relu();
  /// Applied to the generator output before any hard constraint; sigmoid
  /// keeps inputs in (0, 1) for the fading amplitude channel.
  nn::Activation gen_output = nn::Activation::identity();
  double alpha = 1.0;
  int disc_steps = 10;
  std::size_t batch = 512;
  nn::AdamConfig gen_adam{2e-4, 0.5, 0.999, 1e-8};
  nn::AdamConfig disc_adam{2e-4, 0.5, 0.999, 1e-8};
  ConstraintSpec constraint;
  sampling::DerangementMode derangement_mode = sampling::DerangementMode::shift;
  double abort_threshold = 1e6;
};

struct CapacityEstimate {
  double nats = 0;
  double value_function = 0;
  double alpha = 1;
};

struct CorticalTraceRow {
  long iteration = 0;
  double value = 0;
  double capacity_nats = 0;
  double penalty = 0;
};

/// Value alpha mean log D(joint) - mean D(marginal) for D = softplus(raw) on a
/// 1 x 2N raw output (joint columns first). Fills d value / d raw when asked.
double cortical_value(const Eigen::MatrixXd& raw, double alpha, Eigen::MatrixXd* grad_raw);

/// Generator G: latent -> channel input, and discriminator D on (x, y), played
/// as a cooperative max-max game on the alpha value function.
class CapacityLearner {
 public:
  /// ConfigError if the channel is not reparameterizable or the configuration
  /// is inconsistent.
  CapacityLearner(std::shared_ptr<const channels::Channel> channel, LearnerConfig config,
                  std::uint64_t seed);

  const LearnerConfig& config() const noexcept { return config_; }
  const channels::Channel& channel() const noexcept { return *channel_; }
  nn::Mlp& generator() noexcept { return gen_; }
  nn::Mlp& discriminator() noexcept { return disc_; }
  const nn::Mlp& discriminator() const noexcept { return disc_; }
  long iterations() const noexcept { return iteration_; }

  Eigen::MatrixXd sample_latent(std::size_t n, sampling::Rng& rng) const;
  /// Channel inputs G(z) after output activation and hard constraints.
  Eigen::MatrixXd sample_inputs(std::size_t n, sampling::Rng& rng) const;

  /// One ascent step of the discriminator; returns the value before the step.
  double discriminator_step(sampling::Rng& rng);
  /// One ascent step of the generator through the channel; returns the value
  /// before the step and stores the penalty of that batch in *penalty.
  double generator_step(sampling::Rng& rng, double* penalty = nullptr);

  /// `iters` outer iterations of disc_steps discriminator steps followed by
  /// one generator step. One trace row per outer iteration.
  std::vector<CorticalTraceRow> train(long iters, sampling::Rng& rng);

  /// Capacity readout on a fresh batch of n paired samples.
  CapacityEstimate capacity_estimate(std::size_t n, sampling::Rng& rng) const;
  /// Capacity readout on given pairs with marginal pairs (x_i, y_perm[i]).
  CapacityEstimate capacity_estimate(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                                     const sampling::Shuffle& shuffle) const;

 private:
  Eigen::MatrixXd disc_input(const Eigen::MatrixXd& x, const Eigen::MatrixXd& y,
                             const sampling::Shuffle& shuffle) const;
  void check_value(double v) const;

  std::shared_ptr<const channels::Channel> channel_;
  LearnerConfig config_;
  nn::Mlp gen_;
  nn::Mlp disc_;
  nn::AdamState gen_adam_;
  nn::AdamState disc_adam_;
  long iteration_ = 0;
};

}  // namespace infocap::cortical
