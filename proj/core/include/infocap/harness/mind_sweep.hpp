#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "infocap/channels/scenario.hpp"
#include "infocap/harness/config.hpp"
#include "infocap/mind/alphabet.hpp"
#include "infocap/mind/decoder.hpp"
#include "infocap/mind/evaluation.hpp"

namespace infocap::harness {

struct MindConfig {
  /// pam<M>, pam4_nonuniform, bpsk or repetition<n>.
  std::string alphabet = "pam4";
  double source_P = 0.05;
  std::vector<double> prior;
  /// awgn, middleton, nonlinear_sqrt or cauchy. The noise scale follows from
  /// Eb/N0; for middleton the mixture's total variance matches it.
  std::string channel = "awgn";
  double middleton_P = 0.05;
  double middleton_B = 5.0;
  std::vector<double> ebn0_db{7.0};
  /// One decoder per SNR point; otherwise a single decoder trained on batches
  /// whose SNR is drawn uniformly from the list.
  bool per_snr = true;
  long iters = 3000;
  mind::DecoderConfig decoder;
  std::size_t test_samples = 100000;
  std::vector<std::uint64_t> seeds{1};

  static MindConfig from(const ConfigFile& file);
  void validate() const;
  mind::Alphabet make_alphabet() const;
  std::shared_ptr<const channels::Channel> make_channel(const mind::Alphabet& a, double ebn0_db) const;
};

struct MindTrace {
  std::string run_id;
  std::uint64_t seed = 0;
  double ebn0_db = 0;
  long iteration = 0;
  double value = 0;
};

struct MindResult {
  std::string run_id;
  std::uint64_t seed = 0;
  double ebn0_db = 0;
  mind::SerComparison ser;
  double source_entropy_bits = 0;
};

struct MindRun {
  std::vector<MindTrace> traces;
  std::vector<MindResult> results;
};

MindRun run_mind(const MindConfig& config, std::uint64_t master_seed, unsigned threads);

void write_mind(const std::filesystem::path& dir, const MindRun& run);

}  // namespace infocap::harness
