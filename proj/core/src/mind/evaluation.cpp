#include "infocap/mind/evaluation.hpp"

#include "infocap/errors.hpp"
#include "infocap/mind/oracles.hpp"

namespace infocap::mind {

SerComparison compare_decoders(const MindDecoder& decoder, const channels::Channel& channel,
                               std::size_t n, sampling::Rng& rng) {
  if (n == 0) throw ConfigError("compare_decoders: need at least one symbol");
  if (!channel.has_likelihood()) {
    throw ConfigError("compare_decoders: channel '" + channel.name() + "' has no likelihood");
  }
  const Alphabet& a = decoder.alphabet();
  const auto labels = a.sample_indices(n, rng);
  const Matrix y = channel.apply(a.symbol_matrix(labels), rng);
  const LogLikelihoodFn loglik = [&channel](const Eigen::VectorXd& yy, const Eigen::VectorXd& xx) {
    return channel.log_likelihood(yy, xx);
  };

  const auto mind_hat = decoder.decode_batch(y);
  std::size_t err_mind = 0, err_map = 0, err_maxl = 0;
  for (std::size_t c = 0; c < n; ++c) {
    const Eigen::VectorXd yc = y.col(static_cast<Eigen::Index>(c));
    err_mind += mind_hat[c] != labels[c];
    err_map += map_oracle(loglik, a, yc) != labels[c];
    err_maxl += maxl_oracle(loglik, a, yc) != labels[c];
  }
  const double nn = static_cast<double>(n);
  SerComparison out;
  out.n = n;
  out.ser_mind = static_cast<double>(err_mind) / nn;
  out.ser_map = static_cast<double>(err_map) / nn;
  out.ser_maxl = static_cast<double>(err_maxl) / nn;
  out.estimate = decoder.estimate_entropies(y);
  return out;
}

}  // namespace infocap::mind
