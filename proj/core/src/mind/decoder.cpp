#include "infocap/mind/decoder.hpp"

#include <cmath>
#include <string>

#include "infocap/errors.hpp"

namespace infocap::mind {

using nn::log_sigmoid;
using nn::sigmoid;

namespace {

std::size_t argmax_lowest(const Eigen::VectorXd& v) {
  std::size_t best = 0;
  for (Eigen::Index i = 1; i < v.size(); ++i) {
    if (v(i) > v(static_cast<Eigen::Index>(best))) best = static_cast<std::size_t>(i);
  }
  return best;
}

// Normalized posterior from raw outputs: softmax(-raw).
Eigen::VectorXd normalized_from_raw(const Eigen::VectorXd& r) {
  const double m = (-r).maxCoeff();
  Eigen::VectorXd e = ((-r).array() - m).exp().matrix();
  return e / e.sum();
}

}  // namespace

PosteriorTable posterior_from_discriminator(const Eigen::VectorXd& d) {
  if (d.size() == 0) throw ConfigError("posterior: empty discriminator vector");
  if ((d.array() <= 0).any() || (d.array() > 1).any()) {
    throw NumericError("posterior: discriminator values must lie in (0, 1]");
  }
  PosteriorTable t;
  t.raw = ((1.0 - d.array()) / d.array()).matrix();
  const double s = t.raw.sum();
  t.normalized = s > 0 ? Eigen::VectorXd(t.raw / s) : Eigen::VectorXd::Constant(d.size(), 1.0 / d.size());
  return t;
}

std::size_t decode_from_discriminator(const Eigen::VectorXd& d) {
  return argmax_lowest(posterior_from_discriminator(d).normalized);
}

EntropyEstimate estimate_entropies(const Matrix& q) {
  if (q.cols() == 0 || q.rows() == 0) throw ConfigError("estimate_entropies: no samples");
  const double n = static_cast<double>(q.cols());
  auto plogp = [](double p) { return p > 0 ? p * std::log2(p) : 0.0; };
  const Eigen::VectorXd px = q.rowwise().mean();
  EntropyEstimate e;
  for (Eigen::Index i = 0; i < px.size(); ++i) e.h_x_bits -= plogp(px(i));
  double hc = 0;
  double correct = 0;
  for (Eigen::Index c = 0; c < q.cols(); ++c) {
    for (Eigen::Index i = 0; i < q.rows(); ++i) hc -= plogp(q(i, c));
    correct += q.col(c).maxCoeff();
  }
  e.h_x_given_y_bits = hc / n;
  e.mi_bits = e.h_x_bits - e.h_x_given_y_bits;
  e.error_probability = 1.0 - correct / n;
  return e;
}

double mind_value_supervised(const Matrix& d, const std::vector<std::size_t>& labels) {
  if (static_cast<std::size_t>(d.cols()) != labels.size() || labels.empty()) {
    throw ConfigError("mind_value_supervised: label count mismatch");
  }
  double s = 0;
  for (Eigen::Index c = 0; c < d.cols(); ++c) {
    for (Eigen::Index i = 0; i < d.rows(); ++i) s += std::log(d(i, c));
    s += std::log1p(-d(static_cast<Eigen::Index>(labels[static_cast<std::size_t>(c)]), c));
  }
  return s / static_cast<double>(d.cols());
}

double mind_value_unsupervised(
    const std::function<double(const Eigen::VectorXd&, const Eigen::VectorXd&)>& d,
    const Matrix& x_joint, const Matrix& y_joint, const Matrix& u_marg, const Matrix& y_marg,
    double support_measure) {
  if (!(support_measure > 0)) throw ConfigError("mind_value_unsupervised: support measure must be > 0");
  if (x_joint.cols() != y_joint.cols() || u_marg.cols() != y_marg.cols() || x_joint.cols() == 0 ||
      u_marg.cols() == 0) {
    throw ConfigError("mind_value_unsupervised: sample count mismatch");
  }
  double marg = 0;
  for (Eigen::Index c = 0; c < u_marg.cols(); ++c) marg += std::log(d(u_marg.col(c), y_marg.col(c)));
  double joint = 0;
  for (Eigen::Index c = 0; c < x_joint.cols(); ++c) joint += std::log1p(-d(x_joint.col(c), y_joint.col(c)));
  return support_measure * marg / static_cast<double>(u_marg.cols()) +
         joint / static_cast<double>(x_joint.cols());
}

namespace {

std::vector<int> decoder_dims(int in, const std::vector<int>& hidden, int out) {
  std::vector<int> d{in};
  d.insert(d.end(), hidden.begin(), hidden.end());
  d.push_back(out);
  return d;
}

std::vector<nn::Activation> decoder_acts(const DecoderConfig& c) {
  std::vector<nn::Activation> a(c.hidden.size(), c.hidden_activation);
  a.push_back(nn::Activation::identity());
  return a;
}

}  // namespace

MindDecoder::MindDecoder(Alphabet alphabet, int output_dim, DecoderConfig config, std::uint64_t seed)
    : alphabet_(std::move(alphabet)),
      config_(std::move(config)),
      net_(decoder_dims(output_dim, config_.hidden, static_cast<int>(alphabet_.size())),
           decoder_acts(config_), seed),
      adam_(nn::AdamState::for_network(net_, config_.adam)) {
  alphabet_.validate();
  if (config_.batch < 1) throw ConfigError("MindDecoder: batch must be >= 1");
}

double MindDecoder::train_step(const Matrix& y, const std::vector<std::size_t>& labels) {
  if (static_cast<std::size_t>(y.cols()) != labels.size() || labels.empty()) {
    throw ConfigError("MindDecoder::train_step: label count mismatch");
  }
  const Matrix& raw = net_.forward(y);
  const double inv_n = 1.0 / static_cast<double>(y.cols());
  Matrix grad(raw.rows(), raw.cols());
  double value = 0;
  for (Eigen::Index c = 0; c < raw.cols(); ++c) {
    const auto label = static_cast<Eigen::Index>(labels[static_cast<std::size_t>(c)]);
    if (label >= raw.rows()) throw ConfigError("MindDecoder::train_step: label out of range");
    for (Eigen::Index i = 0; i < raw.rows(); ++i) {
      value += log_sigmoid(raw(i, c));
      grad(i, c) = sigmoid(-raw(i, c)) * inv_n;
    }
    value += log_sigmoid(-raw(label, c));
    grad(label, c) -= sigmoid(raw(label, c)) * inv_n;
  }
  value *= inv_n;
  if (!std::isfinite(value) || std::abs(value) > config_.abort_threshold) {
    throw DivergenceError("mind diverged at iteration " + std::to_string(iteration_) + ": value " +
                              std::to_string(value),
                          iteration_, "mind");
  }
  nn::adam_step(net_, net_.backward(-grad), adam_);
  ++iteration_;
  return value;
}

std::vector<double> MindDecoder::train(const channels::Channel& channel, long iters, sampling::Rng& rng) {
  if (channel.input_dim() != alphabet_.dim()) throw ConfigError("MindDecoder: channel/alphabet dimension mismatch");
  std::vector<double> trace;
  trace.reserve(static_cast<std::size_t>(std::max(iters, 0L)));
  for (long it = 0; it < iters; ++it) {
    const auto labels = alphabet_.sample_indices(config_.batch, rng);
    const Matrix y = channel.apply(alphabet_.symbol_matrix(labels), rng);
    trace.push_back(train_step(y, labels));
  }
  return trace;
}

Matrix MindDecoder::discriminator(const Matrix& y) const {
  return net_.evaluate(y).unaryExpr([](double r) { return sigmoid(r); });
}

Matrix MindDecoder::posteriors(const Matrix& y) const {
  const Matrix raw = net_.evaluate(y);
  Matrix q(raw.rows(), raw.cols());
  for (Eigen::Index c = 0; c < raw.cols(); ++c) q.col(c) = normalized_from_raw(raw.col(c));
  return q;
}

PosteriorTable MindDecoder::posterior(const Eigen::VectorXd& y) const {
  const Eigen::VectorXd raw = net_.evaluate(y).col(0);
  return {(-raw).array().exp().matrix(), normalized_from_raw(raw)};
}

std::size_t MindDecoder::decode(const Eigen::VectorXd& y) const { return argmax_lowest(posterior(y).normalized); }

std::vector<std::size_t> MindDecoder::decode_batch(const Matrix& y) const {
  const Matrix q = posteriors(y);
  std::vector<std::size_t> out(static_cast<std::size_t>(q.cols()));
  for (Eigen::Index c = 0; c < q.cols(); ++c) out[static_cast<std::size_t>(c)] = argmax_lowest(q.col(c));
  return out;
}

EntropyEstimate MindDecoder::estimate_entropies(const Matrix& y) const {
  return mind::estimate_entropies(posteriors(y));
}

}  // namespace infocap::mind
