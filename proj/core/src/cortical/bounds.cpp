#include "infocap/cortical/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "infocap/errors.hpp"

namespace infocap::cortical {

double mckellips_bound(double A) {
  if (!(A > 0)) throw ConfigError("mckellips_bound: A must be > 0");
  const double first = std::log1p(2.0 * A / std::sqrt(2.0 * std::numbers::pi * std::numbers::e));
  const double second = 0.5 * std::log1p(A * A);
  return std::min(first, second);
}

double awgn_capacity(double snr, int d) {
  if (!(snr >= 0) || d < 1) throw ConfigError("awgn_capacity: need snr >= 0 and d >= 1");
  return 0.5 * d * std::log1p(snr / d);
}

double cauchy_log_capacity(double A, double gamma) {
  if (!(gamma > 0) || !(A >= gamma)) throw ConfigError("cauchy_log_capacity: need A >= gamma > 0");
  return std::log(A / gamma);
}

double capacity_from_value(double value, double alpha) {
  if (!(alpha > 0)) throw ConfigError("capacity_from_value: alpha must be > 0");
  return value / alpha + 1.0 - std::log(alpha);
}

}  // namespace infocap::cortical
