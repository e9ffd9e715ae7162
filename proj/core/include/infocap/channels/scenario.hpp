#pragma once

#include <memory>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "infocap/channels/noise.hpp"
#include "infocap/sampling/rng.hpp"

namespace infocap::channels {

using Matrix = Eigen::MatrixXd;

/// Memoryless channel acting column-wise on a batch of inputs.
/// Implementations are immutable; randomness comes only from the caller's rng.
class Channel {
 public:
  virtual ~Channel() = default;

  virtual std::string name() const = 0;
  virtual int input_dim() const = 0;
  virtual int output_dim() const { return input_dim(); }

  virtual Matrix apply(const Matrix& x, sampling::Rng& rng) const = 0;

  /// Whether outputs are a differentiable function of the input for fixed noise.
  virtual bool reparameterizable() const { return true; }
  /// dL/dx for fixed noise, given the inputs, the realized outputs and dL/dy.
  /// Defaults to the identity Jacobian of additive noise.
  virtual Matrix pullback(const Matrix& x, const Matrix& y, const Matrix& grad_y) const;

  virtual bool has_likelihood() const { return false; }
  /// log p(y | x). ConfigError when the channel has no closed-form likelihood.
  virtual double log_likelihood(const Eigen::VectorXd& y, const Eigen::VectorXd& x) const;
};

/// y = x + sigma n.
class AwgnChannel final : public Channel {
 public:
  AwgnChannel(int dim, double sigma);
  std::string name() const override { return "awgn"; }
  int input_dim() const override { return dim_; }
  Matrix apply(const Matrix& x, sampling::Rng& rng) const override;
  bool has_likelihood() const override { return true; }
  double log_likelihood(const Eigen::VectorXd& y, const Eigen::VectorXd& x) const override;
  double sigma() const noexcept { return sigma_; }

 private:
  int dim_;
  double sigma_;
};

/// y = sigma n, independent of x.
class IndependentChannel final : public Channel {
 public:
  IndependentChannel(int dim, double sigma);
  std::string name() const override { return "independent"; }
  int input_dim() const override { return dim_; }
  Matrix apply(const Matrix& x, sampling::Rng& rng) const override;
  Matrix pullback(const Matrix& x, const Matrix& y, const Matrix& grad_y) const override;

 private:
  int dim_;
  double sigma_;
};

/// y = x + gamma * standard Cauchy.
class CauchyChannel final : public Channel {
 public:
  CauchyChannel(int dim, double gamma);
  std::string name() const override { return "cauchy"; }
  int input_dim() const override { return dim_; }
  Matrix apply(const Matrix& x, sampling::Rng& rng) const override;
  bool has_likelihood() const override { return true; }
  double log_likelihood(const Eigen::VectorXd& y, const Eigen::VectorXd& x) const override;
  double gamma() const noexcept { return gamma_; }

 private:
  int dim_;
  double gamma_;
};

/// Complex input as (real, imag) rows plus Nakagami-m approximated noise.
class NakagamiChannel final : public Channel {
 public:
  explicit NakagamiChannel(NakagamiNoiseModel model);
  std::string name() const override { return "nakagami"; }
  int input_dim() const override { return 2; }
  Matrix apply(const Matrix& x, sampling::Rng& rng) const override;
  const NakagamiNoiseModel& model() const noexcept { return model_; }

 private:
  NakagamiNoiseModel model_;
};

/// y = x + Bernoulli-Gaussian impulsive noise, i.i.d. per component.
class MiddletonChannel final : public Channel {
 public:
  MiddletonChannel(int dim, MiddletonNoiseModel model);
  std::string name() const override { return "middleton"; }
  int input_dim() const override { return dim_; }
  Matrix apply(const Matrix& x, sampling::Rng& rng) const override;
  bool has_likelihood() const override { return true; }
  double log_likelihood(const Eigen::VectorXd& y, const Eigen::VectorXd& x) const override;
  const MiddletonNoiseModel& model() const noexcept { return model_; }

 private:
  int dim_;
  MiddletonNoiseModel model_;
};

/// p(v | s) = s e^{-s v}, s in (0, 1]; reparameterized as v = -ln U / s.
class RayleighEquivChannel final : public Channel {
 public:
  std::string name() const override { return "rayleigh_equiv"; }
  int input_dim() const override { return 1; }
  Matrix apply(const Matrix& x, sampling::Rng& rng) const override;
  Matrix pullback(const Matrix& x, const Matrix& y, const Matrix& grad_y) const override;
  bool has_likelihood() const override { return true; }
  double log_likelihood(const Eigen::VectorXd& y, const Eigen::VectorXd& x) const override;
};

/// y = sign(x) sqrt|x| + sigma n. Not reparameterizable (the warp has an
/// unbounded derivative at 0), so it is only used with decoders.
class NonlinearSqrtChannel final : public Channel {
 public:
  NonlinearSqrtChannel(int dim, double sigma);
  std::string name() const override { return "nonlinear_sqrt"; }
  int input_dim() const override { return dim_; }
  Matrix apply(const Matrix& x, sampling::Rng& rng) const override;
  bool reparameterizable() const override { return false; }
  bool has_likelihood() const override { return true; }
  double log_likelihood(const Eigen::VectorXd& y, const Eigen::VectorXd& x) const override;

 private:
  int dim_;
  double sigma_;
};

/// Parameters addressable from configuration files. Unused fields are ignored
/// by channels that do not read them.
struct ChannelParams {
  int dim = 1;
  double sigma = 1.0;
  double gamma = 1.0;
  double nakagami_m = 1.0;
  double middleton_P = 0.05;
  double middleton_B = 5.0;
};

/// Tags: awgn, independent, cauchy, nakagami, middleton, rayleigh_equiv,
/// nonlinear_sqrt. ConfigError on unknown tags or invalid parameters.
std::shared_ptr<const Channel> make_channel(std::string_view tag, const ChannelParams& params);

}  // namespace infocap::channels
