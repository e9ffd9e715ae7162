#include "infocap/mind/oracles.hpp"

#include <cmath>
#include <limits>

#include "infocap/errors.hpp"

namespace infocap::mind {

namespace {

std::size_t argmax_score(const Alphabet& a, const Eigen::VectorXd& y, const LogLikelihoodFn& loglik,
                         bool use_prior) {
  if (a.size() == 0) throw ConfigError("decision rule: empty alphabet");
  std::size_t best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) {
    double s = loglik(y, a.symbols[i]);
    if (use_prior) s += a.prior[i] > 0 ? std::log(a.prior[i]) : -std::numeric_limits<double>::infinity();
    if (s > best_score) {
      best_score = s;
      best = i;
    }
  }
  return best;
}

}  // namespace

std::size_t map_oracle(const LogLikelihoodFn& loglik, const Alphabet& alphabet, const Eigen::VectorXd& y) {
  return argmax_score(alphabet, y, loglik, true);
}

std::size_t maxl_oracle(const LogLikelihoodFn& loglik, const Alphabet& alphabet, const Eigen::VectorXd& y) {
  return argmax_score(alphabet, y, loglik, false);
}

Eigen::VectorXd exact_posterior(const LogLikelihoodFn& loglik, const Alphabet& alphabet,
                                const Eigen::VectorXd& y) {
  const auto m = static_cast<Eigen::Index>(alphabet.size());
  Eigen::VectorXd lp(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double p = alphabet.prior[static_cast<std::size_t>(i)];
    lp(i) = p > 0 ? std::log(p) + loglik(y, alphabet.symbols[static_cast<std::size_t>(i)])
                  : -std::numeric_limits<double>::infinity();
  }
  const double mx = lp.maxCoeff();
  Eigen::VectorXd q = (lp.array() - mx).exp().matrix();
  return q / q.sum();
}

}  // namespace infocap::mind
