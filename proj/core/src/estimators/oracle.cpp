#include "infocap/estimators/oracle.hpp"

#include <cmath>
#include <vector>

#include "infocap/divergence/value_functions.hpp"
#include "infocap/errors.hpp"
#include "infocap/estimators/analytic.hpp"

namespace infocap::estimators {

using divergence::FDivergence;
using divergence::FGenerator;

double fdime_readout_at_ratio(const Family& family, double log_r) {
  const double r = std::exp(log_r);
  switch (family.kind) {
    case FamilyKind::kl_dime: {
      const auto g = FGenerator::of(FDivergence::kl);
      return g.log_ratio(g.optimal_discriminator(r));
    }
    case FamilyKind::gan_dime: {
      const auto g = FGenerator::of(FDivergence::gan);
      return g.log_ratio(g.optimal_discriminator(r));
    }
    case FamilyKind::hd_dime: {
      const auto g = FGenerator::of(FDivergence::hd);
      return g.log_ratio(g.optimal_discriminator(r));
    }
    case FamilyKind::gamma_dime: {
      const double d = std::pow(r, 1.0 / family.gamma);
      return family.gamma * divergence::safe_log(d);
    }
    default: break;
  }
  throw ConfigError("fdime_readout_at_ratio: " + family.name() + " is not an f-DIME family");
}

MiEstimate estimate_with_oracle_ratio(const Family& family, const LogRatioFn& log_ratio,
                                      const sampling::Batch& batch,
                                      const sampling::Shuffle& shuffle) {
  const auto n = static_cast<Eigen::Index>(batch.size());
  if (n == 0 || batch.x.cols() != batch.y.cols()) {
    throw ConfigError("estimate_with_oracle_ratio: empty or mismatched batch");
  }
  auto lr = [&](Eigen::Index i, Eigen::Index j) {
    return log_ratio(batch.x.col(i), batch.y.col(j));
  };

  if (family.is_fdime()) {
    double s = 0;
    for (Eigen::Index i = 0; i < n; ++i) s += fdime_readout_at_ratio(family, lr(i, i));
    return {s / static_cast<double>(n), batch.size(), family};
  }
  if (family.kind == FamilyKind::cpc) {
    Eigen::MatrixXd scores(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) scores(i, j) = lr(i, j);
    }
    return {divergence::value_cpc(scores).total, batch.size(), family};
  }

  if (shuffle.size() != batch.size()) throw ConfigError("estimate_with_oracle_ratio: shuffle length mismatch");
  const double shift = family.kind == FamilyKind::nwj ? 1.0 : 0.0;
  std::vector<double> tj(static_cast<std::size_t>(n)), tm(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    tj[static_cast<std::size_t>(i)] = shift + lr(i, i);
    tm[static_cast<std::size_t>(i)] =
        shift + lr(i, static_cast<Eigen::Index>(shuffle.perm[static_cast<std::size_t>(i)]));
  }
  double v = 0;
  if (family.kind == FamilyKind::mine) v = divergence::value_mine(tj, tm).total;
  else if (family.kind == FamilyKind::nwj) v = divergence::value_nwj(tj, tm).total;
  else v = divergence::value_smile(tj, tm, family.tau).total;
  return {v, batch.size(), family};
}

double enumerated_readout(const Family& family, const Eigen::MatrixXd& pmf) {
  validate_pmf(pmf);
  const Eigen::VectorXd px = pmf.rowwise().sum();
  const Eigen::RowVectorXd py = pmf.colwise().sum();
  double s = 0;
  for (Eigen::Index i = 0; i < pmf.rows(); ++i) {
    for (Eigen::Index j = 0; j < pmf.cols(); ++j) {
      const double p = pmf(i, j);
      if (p <= 0) continue;
      s += p * fdime_readout_at_ratio(family, std::log(p) - std::log(px(i) * py(j)));
    }
  }
  return s;
}

}  // namespace infocap::estimators
