#include "infocap/divergence/value_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "infocap/errors.hpp"

namespace infocap::divergence {

namespace {

double mean_of(std::span<const double> v, auto fn) {
  double s = 0;
  for (double x : v) s += fn(x);
  return s / static_cast<double>(v.size());
}

void require_nonempty(std::span<const double> a, std::span<const double> b, const char* who) {
  if (a.empty() || b.empty()) throw ConfigError(std::string(who) + ": empty sample set");
}

void require_finite(std::span<const double> v, const char* who) {
  for (double x : v) {
    if (std::isnan(x)) throw NumericError(std::string(who) + ": NaN critic value");
  }
}

ValueFunctionEval make(double joint, double marginal, double offset) {
  return {joint, marginal, offset, joint - marginal + offset};
}

}  // namespace

double log_mean_exp(std::span<const double> values) {
  if (values.empty()) throw ConfigError("log_mean_exp: empty input");
  const double m = *std::max_element(values.begin(), values.end());
  if (std::isinf(m)) return m;
  double s = 0;
  for (double v : values) s += std::exp(v - m);
  return m + std::log(s / static_cast<double>(values.size()));
}

ValueFunctionEval value_fdime(const FGenerator& gen, std::span<const double> d_joint,
                              std::span<const double> d_marg) {
  require_nonempty(d_joint, d_marg, "value_fdime");
  for (double d : d_joint) gen.check_domain(d);
  for (double d : d_marg) gen.check_domain(d);
  switch (gen.kind()) {
    case FDivergence::kl:
      return make(mean_of(d_joint, [](double d) { return safe_log(d); }),
                  mean_of(d_marg, [](double d) { return d; }), 1.0);
    case FDivergence::gan:
      return make(mean_of(d_joint, [](double d) { return safe_log(1.0 - d); }),
                  -mean_of(d_marg, [](double d) { return safe_log(d); }), std::log(4.0));
    case FDivergence::hd:
      return make(-mean_of(d_joint, [](double d) { return d; }),
                  mean_of(d_marg, [](double d) { return 1.0 / std::max(d, kLogFloor); }), 2.0);
  }
  return {};
}

ValueFunctionEval value_gamma(double gamma, std::span<const double> d_joint,
                              std::span<const double> d_marg) {
  if (!(gamma > 0)) throw ConfigError("value_gamma: gamma must be > 0");
  require_nonempty(d_joint, d_marg, "value_gamma");
  const auto kl = FGenerator::of(FDivergence::kl);
  for (double d : d_joint) kl.check_domain(d);
  for (double d : d_marg) kl.check_domain(d);
  return make(gamma * mean_of(d_joint, [](double d) { return safe_log(d); }),
              mean_of(d_marg, [gamma](double d) { return std::pow(d, gamma); }), 0.0);
}

void MovingAverage::update(double log_sample) {
  if (!initialized) {
    log_value = log_sample;
    initialized = true;
    return;
  }
  // log(decay * e^a + (1 - decay) * e^b)
  const double a = std::log(decay) + log_value;
  const double b = std::log1p(-decay) + log_sample;
  const double m = std::max(a, b);
  log_value = m + std::log(std::exp(a - m) + std::exp(b - m));
}

ValueFunctionEval value_mine(std::span<const double> t_joint, std::span<const double> t_marg,
                             MovingAverage* ema) {
  require_nonempty(t_joint, t_marg, "value_mine");
  require_finite(t_joint, "value_mine");
  require_finite(t_marg, "value_mine");
  const double lme = log_mean_exp(t_marg);
  if (ema) ema->update(lme);
  return make(mean_of(t_joint, [](double t) { return t; }), lme, 0.0);
}

ValueFunctionEval value_nwj(std::span<const double> t_joint, std::span<const double> t_marg) {
  require_nonempty(t_joint, t_marg, "value_nwj");
  require_finite(t_joint, "value_nwj");
  require_finite(t_marg, "value_nwj");
  return make(mean_of(t_joint, [](double t) { return t; }),
              mean_of(t_marg, [](double t) { return std::exp(t - 1.0); }), 0.0);
}

ValueFunctionEval value_smile(std::span<const double> t_joint, std::span<const double> t_marg,
                              double tau) {
  if (!(tau > 0)) throw ConfigError("value_smile: tau must be > 0");
  require_nonempty(t_joint, t_marg, "value_smile");
  require_finite(t_joint, "value_smile");
  require_finite(t_marg, "value_smile");
  std::vector<double> clipped(t_marg.begin(), t_marg.end());
  for (double& t : clipped) t = std::clamp(t, -tau, tau);
  return make(mean_of(t_joint, [](double t) { return t; }), log_mean_exp(clipped), 0.0);
}

ValueFunctionEval value_cpc(const Eigen::MatrixXd& scores) {
  if (scores.rows() != scores.cols() || scores.rows() == 0) {
    throw ConfigError("value_cpc: score matrix must be square and non-empty");
  }
  if (scores.hasNaN()) throw NumericError("value_cpc: NaN score");
  const Eigen::Index n = scores.rows();
  double joint = 0;
  double marginal = 0;
  std::vector<double> row(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = scores(i, j);
    joint += scores(i, i);
    marginal += log_mean_exp(row);
  }
  return make(joint / static_cast<double>(n), marginal / static_cast<double>(n), 0.0);
}

}  // namespace infocap::divergence
