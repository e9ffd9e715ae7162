#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace infocap::harness {

/// One logged training iteration of a staircase run.
struct MetricRecord {
  std::string run_id;
  std::uint64_t seed = 0;
  std::string family;
  int step_index = 0;
  long iteration = 0;
  double estimate_nats = 0;
  double true_nats = 0;
};

struct MetricRow {
  std::string family;
  int step_index = 0;
  double true_nats = 0;
  double bias = 0;
  double variance = 0;
  double mse = 0;
  std::size_t n = 0;
};

/// Bias, population variance and MSE per (family, step) over the last
/// `window` iterations of each step, pooled across seeds. Rows follow the
/// first appearance of each family, then step order. ConfigError for a zero
/// window or an empty selection; NumericError if MSE departs from
/// bias^2 + variance by more than 1e-12.
std::vector<MetricRow> compute_metrics(const std::vector<MetricRecord>& records, std::size_t window);

}  // namespace infocap::harness
