#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "infocap/channels/scenario.hpp"
#include "infocap/cortical/clusters.hpp"
#include "infocap/cortical/learner.hpp"
#include "infocap/harness/config.hpp"

namespace infocap::harness {

struct CorticalConfig {
  std::string channel = "awgn";
  channels::ChannelParams channel_params;
  cortical::LearnerConfig learner;
  /// Parameter varied across the sweep: peak_A, avg_P, sigma, nakagami_m,
  /// cost_A, or "none" for a single point.
  std::string sweep_key = "peak_A";
  std::vector<double> sweep_values{1.5};
  long iters = 500;
  std::size_t eval_samples = 20000;
  /// Cluster radius; <= 0 means 0.05 * A when a peak is set, else 0.05.
  double cluster_eps = 0;
  double min_mass = 0.01;
  std::vector<std::uint64_t> seeds{1};

  /// Reads section [cortical]. ConfigError on unknown keys or bad values.
  static CorticalConfig from(const ConfigFile& file);
  void validate() const;
  /// Channel and learner configuration at one sweep value.
  std::pair<channels::ChannelParams, cortical::LearnerConfig> at(double value) const;
};

struct CorticalTrace {
  std::string run_id;
  std::uint64_t seed = 0;
  double sweep_value = 0;
  cortical::CorticalTraceRow row;
};

struct CorticalResult {
  std::string run_id;
  std::uint64_t seed = 0;
  double sweep_value = 0;
  cortical::CapacityEstimate capacity;
  /// Closed-form reference where one exists for the configuration, else NaN.
  double bound_nats = 0;
  std::vector<cortical::MassPoint> clusters;
  double peak_violation = 0;  // max ||x|| - A over the evaluation samples, 0 without a peak
};

struct CorticalRun {
  std::vector<CorticalTrace> traces;
  std::vector<CorticalResult> results;
};

CorticalRun run_cortical(const CorticalConfig& config, std::uint64_t master_seed, unsigned threads);

/// Reference value for the channel and constraint: McKellips bound for a
/// peak-limited scalar AWGN, Gaussian capacity for an average-power AWGN,
/// ln(A/gamma) for the log-constrained Cauchy channel, 0 for the
/// independence channel, NaN otherwise.
double reference_bound(const std::string& channel, const channels::ChannelParams& params,
                       const cortical::ConstraintSpec& constraint);

void write_cortical(const std::filesystem::path& dir, const CorticalConfig& config, const CorticalRun& run);

}  // namespace infocap::harness
