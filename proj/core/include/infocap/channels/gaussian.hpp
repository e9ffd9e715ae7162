#pragma once

#include <string_view>

#include <Eigen/Dense>

namespace infocap::channels {

/// -(d/2) ln(1 - rho^2). ConfigError unless 0 <= rho < 1.
double true_mi_gaussian(int d, double rho);

/// Inverse of true_mi_gaussian: sqrt(1 - e^{-2I/d}).
double rho_for_target_mi(int d, double mi_nats);

/// log p(x,y)/(p(x)p(y)) for the correlated Gaussian pair with per-component
/// correlation rho.
double gaussian_log_ratio(double rho, const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Strictly monotone element-wise maps applied to y; MI is unchanged.
enum class Mapping { linear, cubic, half_cube, asinh };

std::string_view to_string(Mapping m);
Mapping parse_mapping(std::string_view text);

double apply_mapping(Mapping m, double y);
double invert_mapping(Mapping m, double v);
Eigen::MatrixXd apply_mapping(Mapping m, const Eigen::MatrixXd& y);
Eigen::MatrixXd invert_mapping(Mapping m, const Eigen::MatrixXd& v);

}  // namespace infocap::channels
