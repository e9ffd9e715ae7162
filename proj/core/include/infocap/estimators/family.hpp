#pragma once

#include <string>
#include <string_view>

namespace infocap::estimators {

enum class FamilyKind { kl_dime, gan_dime, hd_dime, gamma_dime, mine, nwj, smile, cpc };

/// Estimator objective plus its parameters (gamma for gamma_dime, tau for
/// smile, EMA decay for mine).
struct Family {
  FamilyKind kind = FamilyKind::gan_dime;
  double gamma = 1.0;
  double tau = 1.0;
  double ema_decay = 0.9;

  /// "kl_dime", "gamma_dime(2)", "smile(1)", "smile(inf)", ...
  std::string name() const;
  /// Accepts the forms produced by name(); "smile" defaults to tau = 1 and
  /// "gamma_dime" to gamma = 1.
  static Family parse(std::string_view text);

  /// Families whose readout is the joint-sample mean of a log density ratio.
  bool is_fdime() const noexcept;
  bool needs_pair_matrix() const noexcept { return kind == FamilyKind::cpc; }
};

}  // namespace infocap::estimators
