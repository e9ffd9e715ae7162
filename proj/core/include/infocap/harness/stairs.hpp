#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "infocap/channels/gaussian.hpp"
#include "infocap/estimators/estimator.hpp"
#include "infocap/harness/config.hpp"
#include "infocap/harness/metrics.hpp"

namespace infocap::harness {

struct StairsConfig {
  int d = 5;
  std::size_t batch = 64;
  std::vector<estimators::Family> families;
  /// True MI of each step, nats.
  std::vector<double> mi_levels{2, 4, 6, 8, 10};
  long iters_per_step = 4000;
  /// Replicate ids; each is combined with the master seed.
  std::vector<std::uint64_t> seeds{1, 2, 3, 4, 5};
  channels::Mapping mapping = channels::Mapping::linear;
  estimators::MarginalSampling sampling = estimators::MarginalSampling::derangement;
  sampling::DerangementMode derangement_mode = sampling::DerangementMode::shift;
  std::size_t window = 100;
  std::vector<int> hidden{256, 256};
  nn::Activation activation = nn::Activation::relu();
  double lr = 5e-4;
  double abort_threshold = 1e6;

  /// Reads section [stairs]. Keys: d, batch, families, steps + mi_step or
  /// mi_levels, iters_per_step, seeds, mapping, marginals, derangement, window,
  /// hidden, activation, lr, abort_threshold. ConfigError on unknown keys,
  /// unresolved tags or inconsistent values.
  static StairsConfig from(const ConfigFile& file);
  void validate() const;
};

/// Trains every (family, replicate) cell through the staircase and logs the
/// pre-update estimate on the training batch at every iteration. Records are
/// ordered by family, replicate, iteration regardless of thread count.
std::vector<MetricRecord> run_stairs(const StairsConfig& config, std::uint64_t master_seed,
                                     unsigned threads);

/// Seed of one replicate; data streams depend only on this value.
std::uint64_t replicate_seed(std::uint64_t master_seed, std::uint64_t replicate);

void write_records(const std::filesystem::path& path, const std::vector<MetricRecord>& records);
void write_metrics(const std::filesystem::path& path, const std::vector<MetricRow>& rows);

}  // namespace infocap::harness
