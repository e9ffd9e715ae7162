#pragma once

#include <string_view>

#include "infocap/nn/activation.hpp"

namespace infocap::divergence {

enum class FDivergence { kl, gan, hd };

std::string_view to_string(FDivergence kind);
FDivergence parse_fdivergence(std::string_view text);

/// Smallest argument handed to log(); guards underflowed discriminator values.
inline constexpr double kLogFloor = 1e-300;

double safe_log(double v);

/// An f-divergence generator together with the change of variables that maps
/// a discriminator value D onto the variational argument T.
///
///   kind  f(u)                             f*(t)             T(D)
///   kl    u log u                          exp(t - 1)        log D + 1
///   gan   u log u - (u+1)log(u+1) + log 4  -log(1 - e^t)     log(1 - D)
///   hd    (sqrt(u) - 1)^2                  t / (1 - t)       1 - D
///
/// The conjugates are listed without the constant shifts that the training
/// value functions fold into their offsets.
class FGenerator {
 public:
  static FGenerator of(FDivergence kind) { return FGenerator(kind); }

  FDivergence kind() const noexcept { return kind_; }
  std::string_view name() const noexcept { return to_string(kind_); }

  double f(double u) const;
  double conjugate(double t) const;
  double conjugate_deriv(double t) const;

  /// Discriminator value -> variational argument T.
  double variational(double d) const;
  /// Map from the raw network output to the discriminator domain:
  /// softplus for kl/hd, sigmoid for gan.
  nn::Activation output_activation() const;

  /// Log density ratio implied by a discriminator value,
  /// log (f*)'(T(D)): kl log D, gan log((1-D)/D), hd -2 log D.
  double log_ratio(double d) const;

  /// Optimal discriminator for density ratio r: kl r, gan 1/(1+r), hd r^{-1/2}.
  double optimal_discriminator(double r) const;

  /// Throws NumericError if d lies outside the discriminator domain.
  void check_domain(double d) const;

 private:
  explicit FGenerator(FDivergence kind) : kind_(kind) {}
  FDivergence kind_;
};

}  // namespace infocap::divergence
