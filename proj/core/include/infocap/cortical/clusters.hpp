#pragma once

#include <vector>

#include <Eigen/Dense>

namespace infocap::cortical {

struct MassPoint {
  Eigen::VectorXd center;
  double mass = 0;
};

/// Greedy agglomeration: each sample (column) joins the nearest existing
/// cluster whose running-mean center lies within eps, otherwise it opens a new
/// cluster. Masses sum to 1. Output is sorted by the first center coordinate.
std::vector<MassPoint> cluster_mass_points(const Eigen::MatrixXd& samples, double eps);

/// Clusters with mass >= min_mass, masses left as they are.
std::vector<MassPoint> significant_clusters(const std::vector<MassPoint>& clusters, double min_mass);

}  // namespace infocap::cortical
