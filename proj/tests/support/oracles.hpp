#pragma once

// Reference computations that share no code with the library: numeric
// integration, brute-force maximization and direct enumeration.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

/// Composite Simpson rule with an even number of intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
  if (intervals % 2) ++intervals;
  const double h = (b - a) / intervals;
  double s = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

inline double normal_pdf(double x, double mean, double sd) {
  const double z = (x - mean) / sd;
  return std::exp(-0.5 * z * z) / (sd * std::sqrt(2.0 * std::numbers::pi));
}

/// Mutual information of a finite joint pmf given as rows of probabilities.
inline double discrete_mi(const std::vector<std::vector<double>>& p) {
  std::vector<double> px(p.size(), 0.0);
  std::vector<double> py(p.front().size(), 0.0);
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p[i].size(); ++j) {
      px[i] += p[i][j];
      py[j] += p[i][j];
    }
  }
  double mi = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = 0; j < p[i].size(); ++j) {
      if (p[i][j] > 0) mi += p[i][j] * std::log(p[i][j] / (px[i] * py[j]));
    }
  }
  return mi;
}

/// Maximizer of a concave differentiable function on (lo, hi) via bisection
/// on the sign of its derivative.
inline double argmax_concave(const std::function<double(double)>& deriv, double lo, double hi) {
  for (int i = 0; i < 2000 && hi - lo > 1e-15 * std::max(1.0, hi); ++i) {
    const double mid = 0.5 * (lo + hi);
    (deriv(mid) > 0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

/// Mutual information (nats) of equiprobable +-A through y = x + n, n ~ N(0, s^2):
/// I = h(Y) - h(N) by quadrature of the output mixture density.
inline double binary_awgn_mi(double a, double s) {
  auto py = [a, s](double y) { return 0.5 * (normal_pdf(y, a, s) + normal_pdf(y, -a, s)); };
  const double span = a + 12.0 * s;
  const double hy = simpson([&](double y) {
    const double p = py(y);
    return p > 0 ? -p * std::log(p) : 0.0;
  }, -span, span, 40000);
  const double hn = 0.5 * std::log(2.0 * std::numbers::pi * std::numbers::e * s * s);
  return hy - hn;
}

/// Q(x) = P(N(0,1) > x).
inline double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

}  // namespace oracle
