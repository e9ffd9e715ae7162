#include "infocap/channels/scenario.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "infocap/errors.hpp"

namespace infocap::channels {

namespace {

void check_input(const Channel& ch, const Matrix& x) {
  if (x.rows() != ch.input_dim()) {
    throw ConfigError(ch.name() + ": expected " + std::to_string(ch.input_dim()) +
                      "-dimensional inputs, got " + std::to_string(x.rows()));
  }
}

void check_dim(int dim, const char* who) {
  if (dim < 1) throw ConfigError(std::string(who) + ": dimension must be >= 1");
}

double gaussian_log_likelihood(const Eigen::VectorXd& residual, double sigma) {
  const double var = sigma * sigma;
  return -0.5 * (residual.squaredNorm() / var +
                 static_cast<double>(residual.size()) * std::log(2.0 * std::numbers::pi * var));
}

Matrix gaussian_noise(Eigen::Index rows, Eigen::Index cols, double sigma, sampling::Rng& rng) {
  Matrix n(rows, cols);
  for (Eigen::Index c = 0; c < cols; ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) n(r, c) = sigma * rng.normal();
  }
  return n;
}

}  // namespace

Matrix Channel::pullback(const Matrix& x, const Matrix& /*y*/, const Matrix& grad_y) const {
  if (!reparameterizable()) throw ConfigError(name() + " is not reparameterizable");
  if (grad_y.rows() != x.rows() || grad_y.cols() != x.cols()) {
    throw ConfigError(name() + ": pullback shape mismatch");
  }
  return grad_y;
}

double Channel::log_likelihood(const Eigen::VectorXd&, const Eigen::VectorXd&) const {
  throw ConfigError(name() + " has no closed-form likelihood");
}

AwgnChannel::AwgnChannel(int dim, double sigma) : dim_(dim), sigma_(sigma) {
  check_dim(dim, "awgn");
  if (!(sigma > 0)) throw ConfigError("awgn: sigma must be > 0");
}

Matrix AwgnChannel::apply(const Matrix& x, sampling::Rng& rng) const {
  check_input(*this, x);
  return x + gaussian_noise(x.rows(), x.cols(), sigma_, rng);
}

double AwgnChannel::log_likelihood(const Eigen::VectorXd& y, const Eigen::VectorXd& x) const {
  return gaussian_log_likelihood(y - x, sigma_);
}

IndependentChannel::IndependentChannel(int dim, double sigma) : dim_(dim), sigma_(sigma) {
  check_dim(dim, "independent");
  if (!(sigma > 0)) throw ConfigError("independent: sigma must be > 0");
}

Matrix IndependentChannel::apply(const Matrix& x, sampling::Rng& rng) const {
  check_input(*this, x);
  return gaussian_noise(x.rows(), x.cols(), sigma_, rng);
}

Matrix IndependentChannel::pullback(const Matrix& x, const Matrix&, const Matrix&) const {
  return Matrix::Zero(x.rows(), x.cols());
}

CauchyChannel::CauchyChannel(int dim, double gamma) : dim_(dim), gamma_(gamma) {
  check_dim(dim, "cauchy");
  if (!(gamma > 0)) throw ConfigError("cauchy: gamma must be > 0");
}

Matrix CauchyChannel::apply(const Matrix& x, sampling::Rng& rng) const {
  check_input(*this, x);
  return x + cauchy_noise(gamma_, x.rows(), static_cast<std::size_t>(x.cols()), rng);
}

double CauchyChannel::log_likelihood(const Eigen::VectorXd& y, const Eigen::VectorXd& x) const {
  double s = 0;
  for (Eigen::Index k = 0; k < y.size(); ++k) {
    const double u = (y(k) - x(k)) / gamma_;
    s -= std::log(std::numbers::pi * gamma_ * (1.0 + u * u));
  }
  return s;
}

NakagamiChannel::NakagamiChannel(NakagamiNoiseModel model) : model_(model) { model_.validate(); }

Matrix NakagamiChannel::apply(const Matrix& x, sampling::Rng& rng) const {
  check_input(*this, x);
  return x + nakagami_noise(model_, static_cast<std::size_t>(x.cols()), rng);
}

MiddletonChannel::MiddletonChannel(int dim, MiddletonNoiseModel model) : dim_(dim), model_(model) {
  check_dim(dim, "middleton");
  model_.validate();
}

Matrix MiddletonChannel::apply(const Matrix& x, sampling::Rng& rng) const {
  check_input(*this, x);
  return x + middleton_noise(model_, x.rows(), static_cast<std::size_t>(x.cols()), rng);
}

double MiddletonChannel::log_likelihood(const Eigen::VectorXd& y, const Eigen::VectorXd& x) const {
  double s = 0;
  for (Eigen::Index k = 0; k < y.size(); ++k) s += model_.log_pdf(y(k) - x(k));
  return s;
}

Matrix RayleighEquivChannel::apply(const Matrix& x, sampling::Rng& rng) const {
  check_input(*this, x);
  return rayleigh_equiv_output(x, rng);
}

Matrix RayleighEquivChannel::pullback(const Matrix& x, const Matrix& y, const Matrix& grad_y) const {
  // v = -ln U / s  =>  dv/ds = -v / s
  return (grad_y.array() * (-y.array() / x.array())).matrix();
}

double RayleighEquivChannel::log_likelihood(const Eigen::VectorXd& y, const Eigen::VectorXd& x) const {
  if (y(0) < 0) return -std::numeric_limits<double>::infinity();
  return std::log(x(0)) - x(0) * y(0);
}

NonlinearSqrtChannel::NonlinearSqrtChannel(int dim, double sigma) : dim_(dim), sigma_(sigma) {
  check_dim(dim, "nonlinear_sqrt");
  if (!(sigma > 0)) throw ConfigError("nonlinear_sqrt: sigma must be > 0");
}

Matrix NonlinearSqrtChannel::apply(const Matrix& x, sampling::Rng& rng) const {
  check_input(*this, x);
  return nonlinear_sqrt_channel(x, sigma_, rng);
}

double NonlinearSqrtChannel::log_likelihood(const Eigen::VectorXd& y, const Eigen::VectorXd& x) const {
  return gaussian_log_likelihood(y - x.unaryExpr([](double v) { return sqrt_warp(v); }), sigma_);
}

std::shared_ptr<const Channel> make_channel(std::string_view tag, const ChannelParams& p) {
  if (tag == "awgn") return std::make_shared<AwgnChannel>(p.dim, p.sigma);
  if (tag == "independent") return std::make_shared<IndependentChannel>(p.dim, p.sigma);
  if (tag == "cauchy") return std::make_shared<CauchyChannel>(p.dim, p.gamma);
  if (tag == "nakagami") return std::make_shared<NakagamiChannel>(NakagamiNoiseModel{p.nakagami_m, p.sigma * p.sigma});
  if (tag == "middleton") {
    return std::make_shared<MiddletonChannel>(
        p.dim, MiddletonNoiseModel{p.middleton_P, p.middleton_B, p.sigma * p.sigma});
  }
  if (tag == "rayleigh_equiv") return std::make_shared<RayleighEquivChannel>();
  if (tag == "nonlinear_sqrt") return std::make_shared<NonlinearSqrtChannel>(p.dim, p.sigma);
  throw ConfigError("unknown channel '" + std::string(tag) + "'");
}

}  // namespace infocap::channels
