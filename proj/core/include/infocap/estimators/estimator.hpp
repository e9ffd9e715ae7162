#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "infocap/divergence/value_functions.hpp"
#include "infocap/estimators/family.hpp"
#include "infocap/nn/adam.hpp"
#include "infocap/nn/mlp.hpp"
#include "infocap/sampling/batch.hpp"
#include "infocap/sampling/shuffle.hpp"

namespace infocap::estimators {

using Matrix = Eigen::MatrixXd;

/// How product-of-marginals pairs are drawn from a joint batch.
enum class MarginalSampling { derangement, permutation };

std::string_view to_string(MarginalSampling m);
MarginalSampling parse_marginal_sampling(std::string_view text);

struct EstimatorConfig {
  Family family;
  std::vector<int> hidden{256, 256};
  nn::Activation hidden_activation = nn::Activation::relu();
  nn::AdamConfig adam;
  MarginalSampling sampling = MarginalSampling::derangement;
  sampling::DerangementMode derangement_mode = sampling::DerangementMode::shift;
  double abort_threshold = 1e6;
};

struct MiEstimate {
  double value_nats = 0;
  std::size_t n_samples = 0;
  Family family;
};

struct StepResult {
  /// Training objective before the update.
  double value = 0;
  /// Family readout on the same batch before the update.
  double estimate = 0;
};

/// Value, readout and (optionally) the gradient of the value with respect to
/// the raw network outputs, for one family.
struct ObjectiveEval {
  divergence::ValueFunctionEval value;
  double estimate = 0;
  Matrix grad_raw;  // 1 x cols, d value / d raw
};

/// Evaluates a family on raw (pre output map) network outputs.
/// Non-cpc: raw is 1 x 2N, joint columns first then marginal columns.
/// cpc: raw is 1 x N^2 with column i*N + j scoring (x_i, y_j).
/// `ema` is updated for mine when non-null.
ObjectiveEval evaluate_objective(const Family& family, const Matrix& raw, std::size_t n,
                                 divergence::MovingAverage* ema, bool want_grad);

/// Discriminator value reported by the network for a raw output:
/// softplus for kl/hd/gamma, sigmoid for gan and smile, identity otherwise.
double output_map(const Family& family, double raw);

/// A single "deranged" network on concatenated (x, y) trained on one of the
/// supported objectives.
class MiEstimator {
 public:
  MiEstimator(int dx, int dy, EstimatorConfig config, std::uint64_t seed);

  const EstimatorConfig& config() const noexcept { return config_; }
  const Family& family() const noexcept { return config_.family; }
  nn::Mlp& network() noexcept { return net_; }
  const nn::Mlp& network() const noexcept { return net_; }
  long iterations() const noexcept { return iteration_; }

  /// Marginal shuffle according to the configured sampling mode.
  sampling::Shuffle make_shuffle(std::size_t n, sampling::Rng& rng) const;

  /// One Adam ascent step on the family's value function. Throws ConfigError
  /// if a derangement-mode estimator receives a shuffle with fixed points and
  /// DivergenceError if the loss is non-finite or exceeds the abort threshold.
  StepResult train_step(const sampling::Batch& batch, const sampling::Shuffle& shuffle);

  /// Readout on a batch. f-DIME families ignore the shuffle entirely.
  MiEstimate estimate(const sampling::Batch& batch, const sampling::Shuffle& shuffle) const;
  /// f-DIME readout from joint samples alone. ConfigError for other families.
  MiEstimate estimate_joint(const Matrix& x, const Matrix& y) const;

 private:
  Matrix build_input(const sampling::Batch& batch, const sampling::Shuffle& shuffle) const;

  EstimatorConfig config_;
  int dx_;
  int dy_;
  nn::Mlp net_;
  nn::AdamState adam_;
  divergence::MovingAverage ema_;
  long iteration_ = 0;
};

/// Network input of all N^2 pairs (x_i, y_j), column i*N + j.
Matrix pair_matrix_input(const Matrix& x, const Matrix& y);

}  // namespace infocap::estimators
