#include "infocap/nn/gradient_check.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace infocap::nn {

GradientCheckReport gradient_check(Mlp& net, const Matrix& batch, const ScalarLoss& loss,
                                   double tol, double step) {
  const std::vector<double> original = net.flatten();

  const Matrix& out = net.forward(batch);
  Matrix upstream;
  loss(out, &upstream);
  const std::vector<double> analytic = Mlp::flatten(net.backward(upstream));

  std::vector<double> probe = original;
  GradientCheckReport report;
  for (std::size_t k = 0; k < probe.size(); ++k) {
    probe[k] = original[k] + step;
    net.unflatten(probe);
    const double up = loss(net.evaluate(batch), nullptr);
    probe[k] = original[k] - step;
    net.unflatten(probe);
    const double down = loss(net.evaluate(batch), nullptr);
    probe[k] = original[k];

    const double numeric = (up - down) / (2.0 * step);
    // Central differences carry roundoff of order eps |L| / step (~1e-10), so
    // gradients below kGradientFloor are effectively compared in absolute terms.
    const double denom = std::max({std::abs(analytic[k]), std::abs(numeric), kGradientFloor});
    report.max_relative_error =
        std::max(report.max_relative_error, std::abs(analytic[k] - numeric) / denom);
  }
  net.unflatten(original);
  report.parameters_checked = probe.size();
  report.passed = report.max_relative_error <= tol;
  return report;
}

}  // namespace infocap::nn
