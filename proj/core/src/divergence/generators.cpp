#include "infocap/divergence/generators.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "infocap/errors.hpp"

namespace infocap::divergence {

std::string_view to_string(FDivergence kind) {
  switch (kind) {
    case FDivergence::kl: return "kl";
    case FDivergence::gan: return "gan";
    case FDivergence::hd: return "hd";
  }
  return "kl";
}

FDivergence parse_fdivergence(std::string_view text) {
  if (text == "kl") return FDivergence::kl;
  if (text == "gan") return FDivergence::gan;
  if (text == "hd") return FDivergence::hd;
  throw ConfigError("unknown f-divergence '" + std::string(text) + "'");
}

double safe_log(double v) { return std::log(std::max(v, kLogFloor)); }

double FGenerator::f(double u) const {
  switch (kind_) {
    case FDivergence::kl: return u == 0 ? 0.0 : u * std::log(u);
    case FDivergence::gan:
      return (u == 0 ? 0.0 : u * std::log(u)) - (u + 1) * std::log(u + 1) + std::log(4.0);
    case FDivergence::hd: {
      const double s = std::sqrt(u) - 1.0;
      return s * s;
    }
  }
  return 0;
}

double FGenerator::conjugate(double t) const {
  switch (kind_) {
    case FDivergence::kl: return std::exp(t - 1.0);
    case FDivergence::gan: return -std::log1p(-std::exp(t));
    case FDivergence::hd: return t / (1.0 - t);
  }
  return 0;
}

double FGenerator::conjugate_deriv(double t) const {
  switch (kind_) {
    case FDivergence::kl: return std::exp(t - 1.0);
    case FDivergence::gan: {
      const double e = std::exp(t);
      return e / (1.0 - e);
    }
    case FDivergence::hd: return 1.0 / ((1.0 - t) * (1.0 - t));
  }
  return 0;
}

double FGenerator::variational(double d) const {
  switch (kind_) {
    case FDivergence::kl: return safe_log(d) + 1.0;
    case FDivergence::gan: return safe_log(1.0 - d);
    case FDivergence::hd: return 1.0 - d;
  }
  return 0;
}

nn::Activation FGenerator::output_activation() const {
  return kind_ == FDivergence::gan ? nn::Activation::sigmoid() : nn::Activation::softplus();
}

double FGenerator::log_ratio(double d) const {
  switch (kind_) {
    case FDivergence::kl: return safe_log(d);
    case FDivergence::gan: return safe_log(1.0 - d) - safe_log(d);
    case FDivergence::hd: return -2.0 * safe_log(d);
  }
  return 0;
}

double FGenerator::optimal_discriminator(double r) const {
  switch (kind_) {
    case FDivergence::kl: return r;
    case FDivergence::gan: return 1.0 / (1.0 + r);
    case FDivergence::hd: return 1.0 / std::sqrt(r);
  }
  return r;
}

void FGenerator::check_domain(double d) const {
  const bool ok = kind_ == FDivergence::gan ? (d >= 0.0 && d <= 1.0) : (d >= 0.0 && std::isfinite(d));
  if (!ok) {
    throw NumericError(std::string(name()) + ": discriminator value " + std::to_string(d) +
                       " outside its domain");
  }
}

}  // namespace infocap::divergence
