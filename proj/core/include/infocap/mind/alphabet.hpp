#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "infocap/sampling/rng.hpp"

namespace infocap::mind {

/// M channel-input vectors with a prior pmf.
struct Alphabet {
  std::vector<Eigen::VectorXd> symbols;
  std::vector<double> prior;

  std::size_t size() const noexcept { return symbols.size(); }
  int dim() const { return symbols.empty() ? 0 : static_cast<int>(symbols.front().size()); }

  /// ConfigError unless symbols are non-empty, equal-length and distinct and
  /// the prior is a pmf of matching length.
  void validate() const;

  /// Levels -(M-1), ..., -1, 1, ..., M-1. Empty prior means uniform.
  static Alphabet pam(int m, std::vector<double> prior = {});
  /// 4-PAM with prior [(1-P)/2, P/2, (1-P)/2, P/2].
  static Alphabet pam4_nonuniform(double p);
  static Alphabet bpsk();
  /// Length-n repetition of BPSK: {-1...-1, +1...+1}.
  static Alphabet repetition(int n);

  /// Mean of ||x||^2 over the symbols, unweighted (nominal constellation energy).
  double nominal_energy() const;
  /// -sum prior log2 prior.
  double source_entropy_bits() const;

  std::vector<std::size_t> sample_indices(std::size_t n, sampling::Rng& rng) const;
  Eigen::MatrixXd symbol_matrix(const std::vector<std::size_t>& indices) const;
};

/// Per-component noise standard deviation for a given Eb/N0 in dB:
/// Eb = nominal_energy / log2 M, sigma^2 = Eb / (2 Eb/N0).
double sigma_for_ebn0(const Alphabet& alphabet, double ebn0_db);

}  // namespace infocap::mind
