#include "infocap/cortical/clusters.hpp"

#include <algorithm>
#include <limits>

#include "infocap/errors.hpp"

namespace infocap::cortical {

std::vector<MassPoint> cluster_mass_points(const Eigen::MatrixXd& samples, double eps) {
  if (!(eps > 0)) throw ConfigError("cluster_mass_points: eps must be > 0");
  if (samples.cols() == 0) throw ConfigError("cluster_mass_points: no samples");
  std::vector<Eigen::VectorXd> centers;
  std::vector<double> counts;
  const double eps2 = eps * eps;
  for (Eigen::Index c = 0; c < samples.cols(); ++c) {
    std::size_t best = centers.size();
    double best_d2 = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < centers.size(); ++k) {
      const double d2 = (centers[k] - samples.col(c)).squaredNorm();
      if (d2 < best_d2) {
        best_d2 = d2;
        best = k;
      }
    }
    if (best < centers.size() && best_d2 <= eps2) {
      counts[best] += 1;
      centers[best] += (samples.col(c) - centers[best]) / counts[best];
    } else {
      centers.emplace_back(samples.col(c));
      counts.push_back(1);
    }
  }
  std::vector<MassPoint> out;
  const double n = static_cast<double>(samples.cols());
  for (std::size_t k = 0; k < centers.size(); ++k) out.push_back({centers[k], counts[k] / n});
  std::sort(out.begin(), out.end(), [](const MassPoint& a, const MassPoint& b) {
    return std::lexicographical_compare(a.center.data(), a.center.data() + a.center.size(),
                                        b.center.data(), b.center.data() + b.center.size());
  });
  return out;
}

std::vector<MassPoint> significant_clusters(const std::vector<MassPoint>& clusters, double min_mass) {
  std::vector<MassPoint> out;
  for (const auto& c : clusters) {
    if (c.mass >= min_mass) out.push_back(c);
  }
  return out;
}

}  // namespace infocap::cortical
