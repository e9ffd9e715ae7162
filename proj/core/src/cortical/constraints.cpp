#include "infocap/cortical/constraints.hpp"

#include <cmath>
#include <string>

#include "infocap/errors.hpp"

namespace infocap::cortical {

std::string_view to_string(PeakMode m) { return m == PeakMode::hard ? "hard" : "penalty"; }
std::string_view to_string(AverageMode m) { return m == AverageMode::hard ? "hard" : "penalty"; }

std::string_view to_string(CostKind c) {
  switch (c) {
    case CostKind::power: return "power";
    case CostKind::cauchy_log: return "cauchy_log";
    case CostKind::inverse: return "inverse";
  }
  return "power";
}

PeakMode parse_peak_mode(std::string_view text) {
  if (text == "hard") return PeakMode::hard;
  if (text == "penalty") return PeakMode::penalty;
  throw ConfigError("unknown peak mode '" + std::string(text) + "'");
}

AverageMode parse_average_mode(std::string_view text) {
  if (text == "hard") return AverageMode::hard;
  if (text == "penalty") return AverageMode::penalty;
  throw ConfigError("unknown average mode '" + std::string(text) + "'");
}

CostKind parse_cost_kind(std::string_view text) {
  if (text == "power") return CostKind::power;
  if (text == "cauchy_log") return CostKind::cauchy_log;
  if (text == "inverse") return CostKind::inverse;
  throw ConfigError("unknown cost '" + std::string(text) + "'");
}

void ConstraintSpec::validate() const {
  if (peak_A && !(*peak_A > 0)) throw ConfigError("constraint: peak_A must be > 0");
  if (avg_P && !(*avg_P > 0)) throw ConfigError("constraint: avg_P must be > 0");
  if (!(lambda_A >= 0) || !(lambda_P >= 0)) throw ConfigError("constraint: penalty weights must be >= 0");
  if (avg_P && avg_mode == AverageMode::hard && cost != CostKind::power) {
    throw ConfigError("constraint: hard average scaling only applies to the power cost");
  }
  if (!(cost_A > 0) || !(cost_gamma > 0)) throw ConfigError("constraint: cost parameters must be > 0");
}

double sample_cost(const ConstraintSpec& spec, const Eigen::VectorXd& x) {
  switch (spec.cost) {
    case CostKind::power: return x.squaredNorm();
    case CostKind::cauchy_log: {
      const double k = (spec.cost_A + spec.cost_gamma) / spec.cost_A;
      return std::log(k * k + x.squaredNorm() / (spec.cost_A * spec.cost_A));
    }
    case CostKind::inverse: return (1.0 / x.array() - 1.0).sum();
  }
  return 0;
}

namespace {

Eigen::VectorXd cost_gradient(const ConstraintSpec& spec, const Eigen::VectorXd& x) {
  switch (spec.cost) {
    case CostKind::power: return 2.0 * x;
    case CostKind::cauchy_log: {
      const double a2 = spec.cost_A * spec.cost_A;
      const double k = (spec.cost_A + spec.cost_gamma) / spec.cost_A;
      return 2.0 * x / (a2 * (k * k + x.squaredNorm() / a2));
    }
    case CostKind::inverse: return (-1.0 / x.array().square()).matrix();
  }
  return Eigen::VectorXd::Zero(x.size());
}

bool peak_penalized(const ConstraintSpec& s) { return s.peak_A && s.peak_mode == PeakMode::penalty; }
bool avg_penalized(const ConstraintSpec& s) { return s.avg_P && s.avg_mode == AverageMode::penalty; }

double mean_cost(const Matrix& x, const ConstraintSpec& spec) {
  double s = 0;
  for (Eigen::Index c = 0; c < x.cols(); ++c) s += sample_cost(spec, x.col(c));
  return s / static_cast<double>(x.cols());
}

}  // namespace

double constraint_penalty(const Matrix& x, const ConstraintSpec& spec) {
  if (x.cols() == 0) return 0;
  const double n = static_cast<double>(x.cols());
  double p = 0;
  if (peak_penalized(spec)) {
    const double a2 = *spec.peak_A * *spec.peak_A;
    double s = 0;
    for (Eigen::Index c = 0; c < x.cols(); ++c) s += std::max(x.col(c).squaredNorm() - a2, 0.0);
    p += spec.lambda_A * s / n;
  }
  if (avg_penalized(spec)) p += spec.lambda_P * std::max(mean_cost(x, spec) - *spec.avg_P, 0.0);
  return p;
}

Matrix penalty_gradient(const Matrix& x, const ConstraintSpec& spec) {
  Matrix g = Matrix::Zero(x.rows(), x.cols());
  if (x.cols() == 0) return g;
  const double n = static_cast<double>(x.cols());
  if (peak_penalized(spec)) {
    const double a2 = *spec.peak_A * *spec.peak_A;
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      if (x.col(c).squaredNorm() > a2) g.col(c) += spec.lambda_A * 2.0 * x.col(c) / n;
    }
  }
  if (avg_penalized(spec) && mean_cost(x, spec) > *spec.avg_P) {
    for (Eigen::Index c = 0; c < x.cols(); ++c) g.col(c) += spec.lambda_P * cost_gradient(spec, x.col(c)) / n;
  }
  return g;
}

namespace {

constexpr double kTinyNorm = 1e-12;

Matrix peak_squash(const Matrix& u, double a) {
  Matrix x(u.rows(), u.cols());
  for (Eigen::Index c = 0; c < u.cols(); ++c) {
    const double r = u.col(c).norm();
    x.col(c) = r < kTinyNorm ? Eigen::VectorXd(a * u.col(c)) : Eigen::VectorXd(a * std::tanh(r) / r * u.col(c));
  }
  return x;
}

Matrix peak_squash_pullback(const Matrix& u, const Matrix& gx, double a) {
  // x = g(r) u / r with g = A tanh.
  Matrix gu(u.rows(), u.cols());
  for (Eigen::Index c = 0; c < u.cols(); ++c) {
    const double r = u.col(c).norm();
    if (r < kTinyNorm) {
      gu.col(c) = a * gx.col(c);
      continue;
    }
    const double t = std::tanh(r);
    const double g = a * t;
    const double dg = a * (1.0 - t * t);
    const Eigen::VectorXd e = u.col(c) / r;
    gu.col(c) = (g / r) * gx.col(c) + (dg - g / r) * e.dot(gx.col(c)) * e;
  }
  return gu;
}

}  // namespace

Matrix apply_hard_constraints(const Matrix& u, const ConstraintSpec& spec) {
  Matrix x = spec.peak_A && spec.peak_mode == PeakMode::hard ? peak_squash(u, *spec.peak_A) : u;
  if (spec.avg_P && spec.avg_mode == AverageMode::hard) {
    const double ms = x.colwise().squaredNorm().mean();
    if (!(ms > 0)) throw NumericError("hard average scaling: zero-power batch");
    x *= std::sqrt(*spec.avg_P / ms);
  }
  return x;
}

Matrix hard_constraints_pullback(const Matrix& u, const Matrix& grad_x, const ConstraintSpec& spec) {
  const bool hard_peak = spec.peak_A && spec.peak_mode == PeakMode::hard;
  const Matrix v = hard_peak ? peak_squash(u, *spec.peak_A) : u;
  Matrix gv = grad_x;
  if (spec.avg_P && spec.avg_mode == AverageMode::hard) {
    // x_j = c v_j / s, s = sqrt(S / N), S = sum_k ||v_k||^2
    const double n = static_cast<double>(v.cols());
    const double total = v.squaredNorm();
    const double s = std::sqrt(total / n);
    const double c = std::sqrt(*spec.avg_P);
    const double inner = (v.array() * grad_x.array()).sum();
    gv = (c / s) * grad_x - (c * inner / (s * s * s * n)) * v;
  }
  return hard_peak ? peak_squash_pullback(u, gv, *spec.peak_A) : gv;
}

}  // namespace infocap::cortical
