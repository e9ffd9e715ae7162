#include "infocap/channels/gaussian.hpp"

#include <cmath>
#include <string>

#include "infocap/errors.hpp"

namespace infocap::channels {

double true_mi_gaussian(int d, double rho) {
  if (d < 1) throw ConfigError("true_mi_gaussian: d must be >= 1");
  if (!(rho >= 0 && rho < 1)) throw ConfigError("true_mi_gaussian: rho must lie in [0, 1)");
  return -0.5 * d * std::log1p(-rho * rho);
}

double rho_for_target_mi(int d, double mi_nats) {
  if (d < 1) throw ConfigError("rho_for_target_mi: d must be >= 1");
  if (!(mi_nats >= 0) || !std::isfinite(mi_nats)) throw ConfigError("rho_for_target_mi: I must be >= 0");
  return std::sqrt(-std::expm1(-2.0 * mi_nats / d));
}

double gaussian_log_ratio(double rho, const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  if (x.size() != y.size()) throw ConfigError("gaussian_log_ratio: dimension mismatch");
  const double r2 = rho * rho;
  const double s = 1.0 - r2;
  double acc = -0.5 * static_cast<double>(x.size()) * std::log1p(-r2);
  for (Eigen::Index k = 0; k < x.size(); ++k) {
    const double a = x(k);
    const double b = y(k);
    acc -= (r2 * a * a - 2.0 * rho * a * b + r2 * b * b) / (2.0 * s);
  }
  return acc;
}

std::string_view to_string(Mapping m) {
  switch (m) {
    case Mapping::linear: return "gaussian";
    case Mapping::cubic: return "cubic";
    case Mapping::half_cube: return "half_cube";
    case Mapping::asinh: return "asinh";
  }
  return "gaussian";
}

Mapping parse_mapping(std::string_view text) {
  if (text == "gaussian" || text == "linear") return Mapping::linear;
  if (text == "cubic") return Mapping::cubic;
  if (text == "half_cube") return Mapping::half_cube;
  if (text == "asinh") return Mapping::asinh;
  throw ConfigError("unknown scenario mapping '" + std::string(text) + "'");
}

double apply_mapping(Mapping m, double y) {
  switch (m) {
    case Mapping::linear: return y;
    case Mapping::cubic: return y * y * y;
    case Mapping::half_cube: return std::copysign(std::pow(std::abs(y), 1.5), y);
    case Mapping::asinh: return std::asinh(y);
  }
  return y;
}

double invert_mapping(Mapping m, double v) {
  switch (m) {
    case Mapping::linear: return v;
    case Mapping::cubic: return std::cbrt(v);
    case Mapping::half_cube: return std::copysign(std::pow(std::abs(v), 2.0 / 3.0), v);
    case Mapping::asinh: return std::sinh(v);
  }
  return v;
}

Eigen::MatrixXd apply_mapping(Mapping m, const Eigen::MatrixXd& y) {
  return y.unaryExpr([m](double v) { return apply_mapping(m, v); });
}

Eigen::MatrixXd invert_mapping(Mapping m, const Eigen::MatrixXd& v) {
  return v.unaryExpr([m](double t) { return invert_mapping(m, t); });
}

}  // namespace infocap::channels
