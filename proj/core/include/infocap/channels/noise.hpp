#pragma once

#include <cstddef>

#include <Eigen/Dense>

#include "infocap/sampling/rng.hpp"

namespace infocap::channels {

/// Gaussian-component approximation of Nakagami-m noise, 1/2 <= m <= 1.
struct NakagamiNoiseModel {
  double m = 1.0;
  double sigma2 = 1.0;

  /// sqrt(1/m - 1).
  double b() const;
  double real_variance() const { return sigma2 * (1.0 + b()) / 2.0; }
  double imag_variance() const { return sigma2 * (1.0 - b()) / 2.0; }
  void validate() const;
};

/// (1-P) N(0, sigma_b^2) + P N(0, B sigma_b^2).
struct MiddletonNoiseModel {
  double P = 0.05;
  double B = 5.0;
  double sigma_b2 = 1.0;

  double pdf(double n) const;
  double log_pdf(double n) const;
  double variance() const { return sigma_b2 * (1.0 - P + P * B); }
  void validate() const;
};

/// 2 x N matrix: row 0 real part, row 1 imaginary part.
Eigen::MatrixXd nakagami_noise(const NakagamiNoiseModel& model, std::size_t n, sampling::Rng& rng);
Eigen::MatrixXd middleton_noise(const MiddletonNoiseModel& model, Eigen::Index rows, std::size_t n,
                                sampling::Rng& rng);
Eigen::MatrixXd cauchy_noise(double gamma, Eigen::Index rows, std::size_t n, sampling::Rng& rng);

/// v ~ Exponential(rate s) per entry. ConfigError unless every s lies in (0, 1].
Eigen::MatrixXd rayleigh_equiv_output(const Eigen::MatrixXd& s, sampling::Rng& rng);

/// sign(x) sqrt|x| + N(0, sigma^2).
Eigen::MatrixXd nonlinear_sqrt_channel(const Eigen::MatrixXd& x, double sigma, sampling::Rng& rng);
double sqrt_warp(double x);

}  // namespace infocap::channels
