#pragma once

#include <span>

#include <Eigen/Dense>

#include "infocap/divergence/generators.hpp"

namespace infocap::divergence {

/// Monte Carlo value of a training objective, in nats.
/// total = joint_term - marginal_term + offset.
struct ValueFunctionEval {
  double joint_term = 0;
  double marginal_term = 0;
  double offset = 0;
  double total = 0;
};

/// f-DIME value functions over discriminator values:
///   kl   mean log D_j - mean D_m + 1
///   gan  mean log(1 - D_j) + mean log D_m + log 4
///   hd   2 - mean D_j - mean 1/D_m
ValueFunctionEval value_fdime(const FGenerator& gen, std::span<const double> d_joint,
                              std::span<const double> d_marg);

/// gamma * mean log D_j - mean D_m^gamma. I(X;Y) >= value + 1 at the optimum.
ValueFunctionEval value_gamma(double gamma, std::span<const double> d_joint,
                              std::span<const double> d_marg);

/// Exponential moving average of the MINE partition function, kept in log space.
struct MovingAverage {
  double decay = 0.9;
  double log_value = 0;
  bool initialized = false;

  void update(double log_sample);
};

/// mean T_j - log mean exp(T_m). When `ema` is given it is updated with the
/// batch partition estimate (the value itself never uses the average).
ValueFunctionEval value_mine(std::span<const double> t_joint, std::span<const double> t_marg,
                             MovingAverage* ema = nullptr);

/// mean T_j - mean exp(T_m - 1).
ValueFunctionEval value_nwj(std::span<const double> t_joint, std::span<const double> t_marg);

/// mean T_j - log mean clip(exp(T_m), e^-tau, e^tau). tau may be +inf.
ValueFunctionEval value_smile(std::span<const double> t_joint, std::span<const double> t_marg,
                              double tau);

/// mean_i [ S_ii - log mean_j exp(S_ij) ]; bounded above by log N.
ValueFunctionEval value_cpc(const Eigen::MatrixXd& scores);

double log_mean_exp(std::span<const double> values);

}  // namespace infocap::divergence
