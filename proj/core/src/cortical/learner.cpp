#include "infocap/cortical/learner.hpp"

#include <cmath>
#include <string>

#include "infocap/cortical/bounds.hpp"
#include "infocap/errors.hpp"

namespace infocap::cortical {

using Eigen::MatrixXd;
using nn::sigmoid;
using nn::softplus;

std::string_view to_string(LatentKind k) { return k == LatentKind::normal ? "normal" : "bernoulli"; }

LatentKind parse_latent_kind(std::string_view text) {
  if (text == "normal") return LatentKind::normal;
  if (text == "bernoulli") return LatentKind::bernoulli;
  throw ConfigError("unknown latent kind '" + std::string(text) + "'");
}

double cortical_value(const MatrixXd& raw, double alpha, MatrixXd* grad_raw) {
  if (raw.rows() != 1 || raw.cols() < 2 || raw.cols() % 2 != 0) {
    throw ConfigError("cortical_value: raw output must be 1 x 2N");
  }
  const Eigen::Index n = raw.cols() / 2;
  const double inv_n = 1.0 / static_cast<double>(n);
  if (grad_raw) grad_raw->setZero(1, raw.cols());
  double joint = 0;
  double marg = 0;
  for (Eigen::Index c = 0; c < n; ++c) {
    const double rj = raw(0, c);
    const double rm = raw(0, n + c);
    joint += rj < -30.0 ? rj : std::log(softplus(rj));
    marg += softplus(rm);
    if (grad_raw) {
      (*grad_raw)(0, c) = alpha * (rj < -30.0 ? 1.0 : sigmoid(rj) / softplus(rj)) * inv_n;
      (*grad_raw)(0, n + c) = -sigmoid(rm) * inv_n;
    }
  }
  return alpha * joint * inv_n - marg * inv_n;
}

namespace {

std::vector<int> dims_of(int in, const std::vector<int>& hidden, int out) {
  std::vector<int> d{in};
  d.insert(d.end(), hidden.begin(), hidden.end());
  d.push_back(out);
  return d;
}

std::vector<nn::Activation> acts_of(std::size_t hidden, nn::Activation h, nn::Activation out) {
  std::vector<nn::Activation> a(hidden, h);
  a.push_back(out);
  return a;
}

const channels::Channel& checked(const std::shared_ptr<const channels::Channel>& ch) {
  if (!ch) throw ConfigError("CapacityLearner: no channel");
  if (!ch->reparameterizable()) {
    throw ConfigError("CapacityLearner: channel '" + ch->name() + "' is not reparameterizable");
  }
  return *ch;
}

}  // namespace

CapacityLearner::CapacityLearner(std::shared_ptr<const channels::Channel> channel,
                                 LearnerConfig config, std::uint64_t seed)
    : channel_(std::move(channel)),
      config_(std::move(config)),
      gen_(dims_of(config_.latent_dim, config_.gen_hidden, checked(channel_).input_dim()),
           acts_of(config_.gen_hidden.size(), config_.hidden_activation, config_.gen_output),
           sampling::mix64(seed)),
      disc_(dims_of(channel_->input_dim() + channel_->output_dim(), config_.disc_hidden, 1),
            acts_of(config_.disc_hidden.size(), config_.hidden_activation, nn::Activation::identity()),
            sampling::mix64(seed + 1)),
      gen_adam_(nn::AdamState::for_network(gen_, config_.gen_adam)),
      disc_adam_(nn::AdamState::for_network(disc_, config_.disc_adam)) {
  if (!(config_.alpha > 0)) throw ConfigError("CapacityLearner: alpha must be > 0");
  if (config_.latent_dim < 1) throw ConfigError("CapacityLearner: latent_dim must be >= 1");
  if (config_.disc_steps < 1) throw ConfigError("CapacityLearner: disc_steps must be >= 1");
  if (config_.batch < 2) throw ConfigError("CapacityLearner: batch must be >= 2");
  config_.constraint.validate();
}

MatrixXd CapacityLearner::sample_latent(std::size_t n, sampling::Rng& rng) const {
  MatrixXd z(config_.latent_dim, static_cast<Eigen::Index>(n));
  for (Eigen::Index c = 0; c < z.cols(); ++c) {
    for (Eigen::Index r = 0; r < z.rows(); ++r) {
      z(r, c) = config_.latent == LatentKind::normal ? rng.normal() : (rng.uniform() < 0.5 ? 1.0 : 0.0);
    }
  }
  return z;
}

MatrixXd CapacityLearner::sample_inputs(std::size_t n, sampling::Rng& rng) const {
  return apply_hard_constraints(gen_.evaluate(sample_latent(n, rng)), config_.constraint);
}

MatrixXd CapacityLearner::disc_input(const MatrixXd& x, const MatrixXd& y,
                                     const sampling::Shuffle& shuffle) const {
  const Eigen::Index n = x.cols();
  const Eigen::Index dx = x.rows();
  const Eigen::Index dy = y.rows();
  if (y.cols() != n || static_cast<Eigen::Index>(shuffle.size()) != n) {
    throw ConfigError("CapacityLearner: batch/shuffle size mismatch");
  }
  MatrixXd in(dx + dy, 2 * n);
  in.topLeftCorner(dx, n) = x;
  in.topRightCorner(dx, n) = x;
  in.bottomLeftCorner(dy, n) = y;
  for (Eigen::Index c = 0; c < n; ++c) {
    in.col(n + c).tail(dy) = y.col(static_cast<Eigen::Index>(shuffle.perm[static_cast<std::size_t>(c)]));
  }
  return in;
}

void CapacityLearner::check_value(double v) const {
  if (!std::isfinite(v) || std::abs(v) > config_.abort_threshold) {
    throw DivergenceError("cortical diverged at iteration " + std::to_string(iteration_) +
                              ": value " + std::to_string(v),
                          iteration_, "cortical");
  }
}

double CapacityLearner::discriminator_step(sampling::Rng& rng) {
  const MatrixXd x = sample_inputs(config_.batch, rng);
  const MatrixXd y = channel_->apply(x, rng);
  const auto pi = sampling::derange(config_.batch, config_.derangement_mode, rng);
  MatrixXd grad;
  const double v = cortical_value(disc_.forward(disc_input(x, y, pi)), config_.alpha, &grad);
  check_value(v);
  nn::adam_step(disc_, disc_.backward(-grad), disc_adam_);
  return v;
}

double CapacityLearner::generator_step(sampling::Rng& rng, double* penalty) {
  const std::size_t n = config_.batch;
  const auto& spec = config_.constraint;
  const MatrixXd u = gen_.forward(sample_latent(n, rng));
  const MatrixXd x = apply_hard_constraints(u, spec);
  const MatrixXd y = channel_->apply(x, rng);
  const auto pi = sampling::derange(n, config_.derangement_mode, rng);

  MatrixXd grad_raw;
  const double v = cortical_value(disc_.forward(disc_input(x, y, pi)), config_.alpha, &grad_raw);
  check_value(v);
  const MatrixXd gin = disc_.backward(grad_raw).input;  // d value / d disc input
  disc_.clear_cache();

  const auto ni = static_cast<Eigen::Index>(n);
  const Eigen::Index dx = x.rows();
  const Eigen::Index dy = y.rows();
  MatrixXd gx = gin.topLeftCorner(dx, ni) + gin.topRightCorner(dx, ni);
  MatrixXd gy = gin.bottomLeftCorner(dy, ni);
  for (Eigen::Index c = 0; c < ni; ++c) {
    gy.col(static_cast<Eigen::Index>(pi.perm[static_cast<std::size_t>(c)])) += gin.col(ni + c).tail(dy);
  }
  gx += channel_->pullback(x, y, gy);
  const double pen = constraint_penalty(x, spec);
  gx -= penalty_gradient(x, spec);
  if (penalty) *penalty = pen;

  const MatrixXd gu = hard_constraints_pullback(u, gx, spec);
  nn::adam_step(gen_, gen_.backward(-gu), gen_adam_);
  return v;
}

std::vector<CorticalTraceRow> CapacityLearner::train(long iters, sampling::Rng& rng) {
  if (iters < 0) throw ConfigError("CapacityLearner::train: negative iteration count");
  std::vector<CorticalTraceRow> trace;
  trace.reserve(static_cast<std::size_t>(iters));
  for (long it = 0; it < iters; ++it) {
    for (int k = 0; k < config_.disc_steps; ++k) discriminator_step(rng);
    double pen = 0;
    const double v = generator_step(rng, &pen);
    trace.push_back({iteration_, v, capacity_from_value(v, config_.alpha), pen});
    ++iteration_;
  }
  return trace;
}

CapacityEstimate CapacityLearner::capacity_estimate(const MatrixXd& x, const MatrixXd& y,
                                                    const sampling::Shuffle& shuffle) const {
  const double v = cortical_value(disc_.evaluate(disc_input(x, y, shuffle)), config_.alpha, nullptr);
  return {capacity_from_value(v, config_.alpha), v, config_.alpha};
}

CapacityEstimate CapacityLearner::capacity_estimate(std::size_t n, sampling::Rng& rng) const {
  const MatrixXd x = sample_inputs(n, rng);
  const MatrixXd y = channel_->apply(x, rng);
  return capacity_estimate(x, y, sampling::derange(n, config_.derangement_mode, rng));
}

}  // namespace infocap::cortical
