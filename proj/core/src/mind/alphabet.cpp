#include "infocap/mind/alphabet.hpp"

#include <cmath>
#include <numeric>

#include "infocap/errors.hpp"

namespace infocap::mind {

void Alphabet::validate() const {
  if (symbols.size() < 2) throw ConfigError("alphabet: need at least two symbols");
  if (prior.size() != symbols.size()) throw ConfigError("alphabet: prior length does not match symbols");
  const auto d = symbols.front().size();
  for (std::size_t i = 0; i < symbols.size(); ++i) {
    if (symbols[i].size() != d || d == 0) throw ConfigError("alphabet: symbols differ in length");
    for (std::size_t j = 0; j < i; ++j) {
      if (symbols[i] == symbols[j]) throw ConfigError("alphabet: duplicate symbol");
    }
  }
  double s = 0;
  for (double p : prior) {
    if (!(p >= 0)) throw ConfigError("alphabet: negative prior entry");
    s += p;
  }
  if (std::abs(s - 1.0) > 1e-12) throw ConfigError("alphabet: prior does not sum to 1");
}

Alphabet Alphabet::pam(int m, std::vector<double> prior) {
  if (m < 2) throw ConfigError("pam: M must be >= 2");
  Alphabet a;
  for (int i = 0; i < m; ++i) {
    Eigen::VectorXd s(1);
    s(0) = 2.0 * i - (m - 1);
    a.symbols.push_back(s);
  }
  a.prior = prior.empty() ? std::vector<double>(static_cast<std::size_t>(m), 1.0 / m) : std::move(prior);
  a.validate();
  return a;
}

Alphabet Alphabet::pam4_nonuniform(double p) {
  if (!(p >= 0 && p <= 1)) throw ConfigError("pam4_nonuniform: P must lie in [0, 1]");
  return pam(4, {(1 - p) / 2, p / 2, (1 - p) / 2, p / 2});
}

Alphabet Alphabet::bpsk() { return pam(2); }

Alphabet Alphabet::repetition(int n) {
  if (n < 1) throw ConfigError("repetition: length must be >= 1");
  Alphabet a;
  a.symbols = {Eigen::VectorXd::Constant(n, -1.0), Eigen::VectorXd::Constant(n, 1.0)};
  a.prior = {0.5, 0.5};
  a.validate();
  return a;
}

double Alphabet::nominal_energy() const {
  double s = 0;
  for (const auto& x : symbols) s += x.squaredNorm();
  return s / static_cast<double>(symbols.size());
}

double Alphabet::source_entropy_bits() const {
  double h = 0;
  for (double p : prior) {
    if (p > 0) h -= p * std::log2(p);
  }
  return h;
}

std::vector<std::size_t> Alphabet::sample_indices(std::size_t n, sampling::Rng& rng) const {
  std::vector<double> cdf(prior.size());
  std::partial_sum(prior.begin(), prior.end(), cdf.begin());
  std::vector<std::size_t> out(n);
  for (auto& idx : out) {
    const double u = rng.uniform() * cdf.back();
    std::size_t k = 0;
    while (k + 1 < cdf.size() && u >= cdf[k]) ++k;
    idx = k;
  }
  return out;
}

Eigen::MatrixXd Alphabet::symbol_matrix(const std::vector<std::size_t>& indices) const {
  Eigen::MatrixXd x(dim(), static_cast<Eigen::Index>(indices.size()));
  for (std::size_t c = 0; c < indices.size(); ++c) x.col(static_cast<Eigen::Index>(c)) = symbols.at(indices[c]);
  return x;
}

double sigma_for_ebn0(const Alphabet& alphabet, double ebn0_db) {
  const double bits = std::log2(static_cast<double>(alphabet.size()));
  const double eb = alphabet.nominal_energy() / bits;
  const double ebn0 = std::pow(10.0, ebn0_db / 10.0);
  return std::sqrt(eb / (2.0 * ebn0));
}

}  // namespace infocap::mind
