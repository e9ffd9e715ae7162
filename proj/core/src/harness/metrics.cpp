#include "infocap/harness/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "infocap/errors.hpp"

namespace infocap::harness {

std::vector<MetricRow> compute_metrics(const std::vector<MetricRecord>& records, std::size_t window) {
  if (window == 0) throw ConfigError("metrics: window must be >= 1");
  if (records.empty()) throw ConfigError("metrics: no records");

  std::vector<std::string> family_order;
  std::map<std::pair<std::string, int>, long> last_iteration;
  for (const auto& r : records) {
    if (std::find(family_order.begin(), family_order.end(), r.family) == family_order.end()) {
      family_order.push_back(r.family);
    }
    auto [it, fresh] = last_iteration.try_emplace({r.family, r.step_index}, r.iteration);
    if (!fresh) it->second = std::max(it->second, r.iteration);
  }

  std::vector<MetricRow> rows;
  for (const auto& fam : family_order) {
    for (const auto& [key, last] : last_iteration) {
      if (key.first != fam) continue;
      const long first = last - static_cast<long>(window) + 1;
      std::vector<double> est;
      double truth = 0;
      for (const auto& r : records) {
        if (r.family == fam && r.step_index == key.second && r.iteration >= first) {
          est.push_back(r.estimate_nats);
          truth = r.true_nats;
        }
      }
      if (est.empty()) throw ConfigError("metrics: empty selection for " + fam);
      const double n = static_cast<double>(est.size());
      double mean = 0;
      for (double e : est) mean += e;
      mean /= n;
      double var = 0;
      double mse = 0;
      for (double e : est) {
        var += (e - mean) * (e - mean);
        mse += (e - truth) * (e - truth);
      }
      var /= n;
      mse /= n;
      const double bias = mean - truth;
      if (std::abs(mse - (bias * bias + var)) > 1e-12 * std::max(1.0, mse)) {
        throw NumericError("metrics: MSE identity violated for " + fam);
      }
      rows.push_back({fam, key.second, truth, bias, var, mse, est.size()});
    }
  }
  return rows;
}

}  // namespace infocap::harness
