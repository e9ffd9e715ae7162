#include "infocap/estimators/estimator.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "infocap/errors.hpp"

namespace infocap::estimators {

using nn::sigmoid;
using nn::softplus;
using nn::log_sigmoid;

namespace {

// log(softplus(r)); softplus(r) ~ e^r for very negative r.
double log_softplus(double r) { return r < -30.0 ? r : std::log(softplus(r)); }

// sigmoid(r) / softplus(r), the derivative of log softplus.
double dlog_softplus(double r) { return r < -30.0 ? 1.0 : sigmoid(r) / softplus(r); }

double row_mean(const Matrix& raw, Eigen::Index begin, Eigen::Index count, auto fn) {
  double s = 0;
  for (Eigen::Index c = begin; c < begin + count; ++c) s += fn(raw(0, c));
  return s / static_cast<double>(count);
}

divergence::ValueFunctionEval make_value(double joint, double marginal, double offset) {
  return {joint, marginal, offset, joint - marginal + offset};
}

std::vector<double> row_values(const Matrix& raw, Eigen::Index begin, Eigen::Index count,
                               double sign = 1.0) {
  std::vector<double> v(static_cast<std::size_t>(count));
  for (Eigen::Index c = 0; c < count; ++c) v[static_cast<std::size_t>(c)] = sign * raw(0, begin + c);
  return v;
}

// Readout of the f-DIME families on joint columns [0, n).
double fdime_readout(const Family& f, const Matrix& raw, Eigen::Index n) {
  switch (f.kind) {
    case FamilyKind::kl_dime: return row_mean(raw, 0, n, log_softplus);
    case FamilyKind::gan_dime: return row_mean(raw, 0, n, [](double r) { return -r; });
    case FamilyKind::hd_dime: return -2.0 * row_mean(raw, 0, n, log_softplus);
    case FamilyKind::gamma_dime: return f.gamma * row_mean(raw, 0, n, log_softplus);
    default: break;
  }
  throw ConfigError("joint-only readout is defined for f-DIME families, not " + f.name());
}

}  // namespace

std::string_view to_string(MarginalSampling m) {
  return m == MarginalSampling::derangement ? "derange" : "permute";
}

MarginalSampling parse_marginal_sampling(std::string_view text) {
  if (text == "derange" || text == "derangement") return MarginalSampling::derangement;
  if (text == "permute" || text == "permutation") return MarginalSampling::permutation;
  throw ConfigError("unknown marginal sampling '" + std::string(text) + "'");
}

double output_map(const Family& family, double raw) {
  switch (family.kind) {
    case FamilyKind::kl_dime:
    case FamilyKind::hd_dime:
    case FamilyKind::gamma_dime: return softplus(raw);
    case FamilyKind::gan_dime:
    case FamilyKind::smile: return sigmoid(raw);
    default: return raw;
  }
}

ObjectiveEval evaluate_objective(const Family& f, const Matrix& raw, std::size_t n_samples,
                                 divergence::MovingAverage* ema, bool want_grad) {
  const auto n = static_cast<Eigen::Index>(n_samples);
  const Eigen::Index expected = f.needs_pair_matrix() ? n * n : 2 * n;
  if (n == 0 || raw.rows() != 1 || raw.cols() != expected) {
    throw ConfigError("evaluate_objective: raw output has the wrong shape for " + f.name());
  }
  ObjectiveEval out;
  if (want_grad) out.grad_raw = Matrix::Zero(1, raw.cols());
  const double inv_n = 1.0 / static_cast<double>(n);
  auto& g = out.grad_raw;

  switch (f.kind) {
    case FamilyKind::kl_dime: {
      out.value = make_value(row_mean(raw, 0, n, log_softplus),
                             row_mean(raw, n, n, [](double r) { return softplus(r); }), 1.0);
      out.estimate = out.value.joint_term;
      if (want_grad) {
        for (Eigen::Index c = 0; c < n; ++c) {
          g(0, c) = dlog_softplus(raw(0, c)) * inv_n;
          g(0, n + c) = -sigmoid(raw(0, n + c)) * inv_n;
        }
      }
      break;
    }
    case FamilyKind::hd_dime: {
      out.value = make_value(-row_mean(raw, 0, n, [](double r) { return softplus(r); }),
                             row_mean(raw, n, n, [](double r) {
                               return 1.0 / std::max(softplus(r), divergence::kLogFloor);
                             }),
                             2.0);
      out.estimate = -2.0 * row_mean(raw, 0, n, log_softplus);
      if (want_grad) {
        for (Eigen::Index c = 0; c < n; ++c) {
          g(0, c) = -sigmoid(raw(0, c)) * inv_n;
          const double r = raw(0, n + c);
          const double sp = std::max(softplus(r), divergence::kLogFloor);
          g(0, n + c) = sigmoid(r) / (sp * sp) * inv_n;
        }
      }
      break;
    }
    case FamilyKind::gamma_dime: {
      const double gm = f.gamma;
      out.value = make_value(gm * row_mean(raw, 0, n, log_softplus),
                             row_mean(raw, n, n, [gm](double r) { return std::pow(softplus(r), gm); }),
                             0.0);
      out.estimate = out.value.joint_term;
      if (want_grad) {
        for (Eigen::Index c = 0; c < n; ++c) {
          g(0, c) = gm * dlog_softplus(raw(0, c)) * inv_n;
          const double r = raw(0, n + c);
          g(0, n + c) = -gm * std::pow(softplus(r), gm - 1.0) * sigmoid(r) * inv_n;
        }
      }
      break;
    }
    case FamilyKind::gan_dime:
    case FamilyKind::smile: {
      out.value = make_value(row_mean(raw, 0, n, [](double r) { return log_sigmoid(-r); }),
                             -row_mean(raw, n, n, [](double r) { return log_sigmoid(r); }),
                             2.0 * std::numbers::ln2);
      if (f.kind == FamilyKind::gan_dime) {
        out.estimate = row_mean(raw, 0, n, [](double r) { return -r; });
      } else {
        // (1 - D)/D = e^{-raw}, so the critic is T = -raw.
        const auto tj = row_values(raw, 0, n, -1.0);
        const auto tm = row_values(raw, n, n, -1.0);
        out.estimate = divergence::value_smile(tj, tm, f.tau).total;
      }
      if (want_grad) {
        for (Eigen::Index c = 0; c < n; ++c) {
          g(0, c) = -sigmoid(raw(0, c)) * inv_n;
          g(0, n + c) = sigmoid(-raw(0, n + c)) * inv_n;
        }
      }
      break;
    }
    case FamilyKind::mine: {
      const auto tj = row_values(raw, 0, n);
      const auto tm = row_values(raw, n, n);
      out.value = divergence::value_mine(tj, tm, ema);
      out.estimate = out.value.total;
      if (want_grad) {
        // With an EMA the partition gradient is normalized by the running
        // average instead of the batch estimate.
        const double log_z = ema ? ema->log_value : out.value.marginal_term;
        for (Eigen::Index c = 0; c < n; ++c) {
          g(0, c) = inv_n;
          g(0, n + c) = -std::exp(raw(0, n + c) - log_z) * inv_n;
        }
      }
      break;
    }
    case FamilyKind::nwj: {
      const auto tj = row_values(raw, 0, n);
      const auto tm = row_values(raw, n, n);
      out.value = divergence::value_nwj(tj, tm);
      out.estimate = out.value.total;
      if (want_grad) {
        for (Eigen::Index c = 0; c < n; ++c) {
          g(0, c) = inv_n;
          g(0, n + c) = -std::exp(raw(0, n + c) - 1.0) * inv_n;
        }
      }
      break;
    }
    case FamilyKind::cpc: {
      Matrix s(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) s(i, j) = raw(0, i * n + j);
      }
      out.value = divergence::value_cpc(s);
      out.estimate = out.value.total;
      if (want_grad) {
        for (Eigen::Index i = 0; i < n; ++i) {
          const double m = s.row(i).maxCoeff();
          const Eigen::RowVectorXd e = (s.row(i).array() - m).exp().matrix();
          const double z = e.sum();
          for (Eigen::Index j = 0; j < n; ++j) {
            g(0, i * n + j) = ((i == j ? 1.0 : 0.0) - e(j) / z) * inv_n;
          }
        }
      }
      break;
    }
  }
  return out;
}

Matrix pair_matrix_input(const Matrix& x, const Matrix& y) {
  if (x.cols() != y.cols()) throw ConfigError("pair_matrix_input: x and y batch sizes differ");
  const Eigen::Index n = x.cols();
  Matrix in(x.rows() + y.rows(), n * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      in.col(i * n + j).head(x.rows()) = x.col(i);
      in.col(i * n + j).tail(y.rows()) = y.col(j);
    }
  }
  return in;
}

namespace {

std::vector<int> layer_dims(int in, const std::vector<int>& hidden) {
  std::vector<int> dims{in};
  dims.insert(dims.end(), hidden.begin(), hidden.end());
  dims.push_back(1);
  return dims;
}

std::vector<nn::Activation> layer_acts(const EstimatorConfig& c) {
  std::vector<nn::Activation> acts(c.hidden.size(), c.hidden_activation);
  acts.push_back(nn::Activation::identity());
  return acts;
}

}  // namespace

MiEstimator::MiEstimator(int dx, int dy, EstimatorConfig config, std::uint64_t seed)
    : config_(std::move(config)),
      dx_(dx),
      dy_(dy),
      net_(layer_dims(dx + dy, config_.hidden), layer_acts(config_), seed),
      adam_(nn::AdamState::for_network(net_, config_.adam)) {
  if (dx < 1 || dy < 1) throw ConfigError("MiEstimator: dimensions must be positive");
  if (!(config_.abort_threshold > 0)) throw ConfigError("MiEstimator: abort threshold must be > 0");
  ema_.decay = config_.family.ema_decay;
}

sampling::Shuffle MiEstimator::make_shuffle(std::size_t n, sampling::Rng& rng) const {
  if (config_.sampling == MarginalSampling::permutation) return sampling::permute_naive(n, rng);
  return sampling::derange(n, config_.derangement_mode, rng);
}

Matrix MiEstimator::build_input(const sampling::Batch& batch,
                                const sampling::Shuffle& shuffle) const {
  if (batch.x.rows() != dx_ || batch.y.rows() != dy_ || batch.x.cols() != batch.y.cols()) {
    throw ConfigError("MiEstimator: batch shape does not match the network");
  }
  if (batch.size() == 0) throw ConfigError("MiEstimator: empty batch");
  if (family().needs_pair_matrix()) return pair_matrix_input(batch.x, batch.y);
  if (shuffle.size() != batch.size()) throw ConfigError("MiEstimator: shuffle length mismatch");

  const Eigen::Index n = batch.x.cols();
  Matrix in(dx_ + dy_, 2 * n);
  in.topLeftCorner(dx_, n) = batch.x;
  in.topRightCorner(dx_, n) = batch.x;
  in.bottomLeftCorner(dy_, n) = batch.y;
  for (Eigen::Index c = 0; c < n; ++c) {
    in.col(n + c).tail(dy_) = batch.y.col(static_cast<Eigen::Index>(shuffle.perm[static_cast<std::size_t>(c)]));
  }
  return in;
}

StepResult MiEstimator::train_step(const sampling::Batch& batch, const sampling::Shuffle& shuffle) {
  if (!family().needs_pair_matrix() && config_.sampling == MarginalSampling::derangement &&
      !shuffle.is_derangement()) {
    throw ConfigError("train_step: shuffle has " + std::to_string(shuffle.fixed_points) +
                      " fixed points but the estimator is configured for derangements");
  }
  const Matrix input = build_input(batch, shuffle);
  const std::string tag = family().name();

  ObjectiveEval obj;
  try {
    const Matrix& raw = net_.forward(input);
    obj = evaluate_objective(family(), raw, batch.size(), &ema_, true);
  } catch (const NumericError& e) {
    throw DivergenceError(tag + " diverged at iteration " + std::to_string(iteration_) + ": " +
                              e.what(),
                          iteration_, tag);
  }
  const double v = obj.value.total;
  if (!std::isfinite(v) || std::abs(v) > config_.abort_threshold || !std::isfinite(obj.estimate)) {
    throw DivergenceError(tag + " diverged at iteration " + std::to_string(iteration_) +
                              ": loss " + std::to_string(v),
                          iteration_, tag);
  }
  const auto grads = net_.backward(-obj.grad_raw);
  nn::adam_step(net_, grads, adam_);
  ++iteration_;
  return {v, obj.estimate};
}

MiEstimate MiEstimator::estimate_joint(const Matrix& x, const Matrix& y) const {
  if (!family().is_fdime()) {
    throw ConfigError("estimate_joint: " + family().name() + " needs marginal samples");
  }
  if (x.rows() != dx_ || y.rows() != dy_ || x.cols() != y.cols() || x.cols() == 0) {
    throw ConfigError("estimate_joint: batch shape does not match the network");
  }
  Matrix in(dx_ + dy_, x.cols());
  in.topRows(dx_) = x;
  in.bottomRows(dy_) = y;
  const Matrix raw = net_.evaluate(in);
  return {fdime_readout(family(), raw, raw.cols()), static_cast<std::size_t>(x.cols()), family()};
}

MiEstimate MiEstimator::estimate(const sampling::Batch& batch, const sampling::Shuffle& shuffle) const {
  if (family().is_fdime()) return estimate_joint(batch.x, batch.y);
  const Matrix raw = net_.evaluate(build_input(batch, shuffle));
  const auto obj = evaluate_objective(family(), raw, batch.size(), nullptr, false);
  return {obj.estimate, batch.size(), family()};
}

}  // namespace infocap::estimators
