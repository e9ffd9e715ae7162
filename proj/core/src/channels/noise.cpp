#include "infocap/channels/noise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "infocap/errors.hpp"

namespace infocap::channels {

namespace {

double normal_log_pdf(double n, double var) {
  return -0.5 * (std::log(2.0 * std::numbers::pi * var) + n * n / var);
}

}  // namespace

void NakagamiNoiseModel::validate() const {
  if (!(m >= 0.5 && m <= 1.0)) throw ConfigError("nakagami: m must lie in [0.5, 1]");
  if (!(sigma2 > 0)) throw ConfigError("nakagami: sigma2 must be > 0");
}

double NakagamiNoiseModel::b() const { return std::sqrt(std::max(1.0 / m - 1.0, 0.0)); }

void MiddletonNoiseModel::validate() const {
  if (!(P >= 0 && P <= 1)) throw ConfigError("middleton: P must lie in [0, 1]");
  if (!(B > 0)) throw ConfigError("middleton: B must be > 0");
  if (!(sigma_b2 > 0)) throw ConfigError("middleton: sigma_b2 must be > 0");
}

double MiddletonNoiseModel::log_pdf(double n) const {
  const double a = std::log1p(-P) + normal_log_pdf(n, sigma_b2);
  if (P == 0) return a;
  const double b = std::log(P) + normal_log_pdf(n, B * sigma_b2);
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

double MiddletonNoiseModel::pdf(double n) const { return std::exp(log_pdf(n)); }

Eigen::MatrixXd nakagami_noise(const NakagamiNoiseModel& model, std::size_t n, sampling::Rng& rng) {
  model.validate();
  const double sr = std::sqrt(model.real_variance());
  const double si = std::sqrt(model.imag_variance());
  Eigen::MatrixXd out(2, static_cast<Eigen::Index>(n));
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    out(0, c) = sr * rng.normal();
    out(1, c) = si * rng.normal();
  }
  return out;
}

Eigen::MatrixXd middleton_noise(const MiddletonNoiseModel& model, Eigen::Index rows, std::size_t n,
                                sampling::Rng& rng) {
  model.validate();
  const double s0 = std::sqrt(model.sigma_b2);
  const double s1 = std::sqrt(model.B * model.sigma_b2);
  Eigen::MatrixXd out(rows, static_cast<Eigen::Index>(n));
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      const bool impulse = rng.uniform() < model.P;
      out(r, c) = (impulse ? s1 : s0) * rng.normal();
    }
  }
  return out;
}

Eigen::MatrixXd cauchy_noise(double gamma, Eigen::Index rows, std::size_t n, sampling::Rng& rng) {
  if (!(gamma > 0)) throw ConfigError("cauchy: gamma must be > 0");
  Eigen::MatrixXd out(rows, static_cast<Eigen::Index>(n));
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    for (Eigen::Index r = 0; r < rows; ++r) {
      out(r, c) = gamma * std::tan(std::numbers::pi * (rng.uniform_open() - 0.5));
    }
  }
  return out;
}

Eigen::MatrixXd rayleigh_equiv_output(const Eigen::MatrixXd& s, sampling::Rng& rng) {
  if ((s.array() <= 0).any() || (s.array() > 1).any() || s.hasNaN()) {
    throw ConfigError("rayleigh_equiv: inputs must lie in (0, 1]");
  }
  Eigen::MatrixXd v(s.rows(), s.cols());
  for (Eigen::Index c = 0; c < s.cols(); ++c) {
    for (Eigen::Index r = 0; r < s.rows(); ++r) v(r, c) = -std::log(rng.uniform_open()) / s(r, c);
  }
  return v;
}

double sqrt_warp(double x) { return std::copysign(std::sqrt(std::abs(x)), x); }

Eigen::MatrixXd nonlinear_sqrt_channel(const Eigen::MatrixXd& x, double sigma, sampling::Rng& rng) {
  if (!(sigma >= 0)) throw ConfigError("nonlinear_sqrt: sigma must be >= 0");
  Eigen::MatrixXd y(x.rows(), x.cols());
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      y(r, c) = sqrt_warp(x(r, c)) + (sigma > 0 ? sigma * rng.normal() : 0.0);
    }
  }
  return y;
}

}  // namespace infocap::channels
