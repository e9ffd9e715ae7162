#include "infocap/harness/stairs.hpp"

#include <cmath>
#include <functional>

#include "infocap/errors.hpp"
#include "infocap/harness/csv.hpp"
#include "infocap/harness/worker_pool.hpp"
#include "infocap/sampling/batch.hpp"

namespace infocap::harness {

StairsConfig StairsConfig::from(const ConfigFile& file) {
  const Section& s = file.section("stairs");
  StairsConfig c;
  c.d = static_cast<int>(s.get_int("d", c.d));
  c.batch = s.get_u64("batch", c.batch);
  for (const auto& tag : s.get_strings("families", {"gan_dime"})) {
    c.families.push_back(estimators::Family::parse(tag));
  }
  if (s.has("mi_levels")) {
    if (s.has("steps") || s.has("mi_step")) {
      throw ConfigError("stairs: give either mi_levels or steps/mi_step, not both");
    }
    c.mi_levels = s.get_doubles("mi_levels", {});
  } else {
    const long steps = s.get_int("steps", 5);
    const double mi_step = s.get_double("mi_step", 2.0);
    if (steps < 1) throw ConfigError("stairs: steps must be >= 1");
    c.mi_levels.clear();
    for (long k = 1; k <= steps; ++k) c.mi_levels.push_back(mi_step * static_cast<double>(k));
  }
  c.iters_per_step = s.get_int("iters_per_step", c.iters_per_step);
  c.seeds = s.get_u64s("seeds", c.seeds);
  c.mapping = channels::parse_mapping(s.get_string("mapping", "gaussian"));
  c.sampling = estimators::parse_marginal_sampling(s.get_string("marginals", "derange"));
  c.derangement_mode = sampling::parse_derangement_mode(s.get_string("derangement", "shift"));
  c.window = s.get_u64("window", c.window);
  c.hidden = s.get_ints("hidden", c.hidden);
  c.activation = nn::Activation::parse(s.get_string("activation", "relu"));
  c.lr = s.get_double("lr", c.lr);
  c.abort_threshold = s.get_double("abort_threshold", c.abort_threshold);
  s.reject_unknown();
  c.validate();
  return c;
}

void StairsConfig::validate() const {
  if (d < 1) throw ConfigError("stairs: d must be >= 1");
  if (batch < 2) throw ConfigError("stairs: batch must be >= 2");
  if (families.empty()) throw ConfigError("stairs: families must not be empty");
  if (mi_levels.empty()) throw ConfigError("stairs: no MI levels");
  for (double mi : mi_levels) {
    if (!(mi >= 0) || !std::isfinite(mi)) throw ConfigError("stairs: MI levels must be finite and >= 0");
  }
  if (iters_per_step < 1) throw ConfigError("stairs: iters_per_step must be >= 1");
  if (seeds.empty()) throw ConfigError("stairs: seeds must not be empty");
  if (window == 0 || static_cast<long>(window) > iters_per_step) {
    throw ConfigError("stairs: window must lie in [1, iters_per_step]");
  }
  for (int h : hidden) {
    if (h < 1) throw ConfigError("stairs: hidden widths must be >= 1");
  }
  if (!(lr > 0)) throw ConfigError("stairs: lr must be > 0");
}

std::uint64_t replicate_seed(std::uint64_t master_seed, std::uint64_t replicate) {
  return sampling::mix64(master_seed ^ sampling::mix64(replicate + 0x9e3779b97f4a7c15ULL));
}

namespace {

std::vector<MetricRecord> run_cell(const StairsConfig& c, std::size_t family_index,
                                   std::uint64_t replicate, std::uint64_t master_seed) {
  const auto& family = c.families[family_index];
  const std::uint64_t seed = replicate_seed(master_seed, replicate);

  estimators::EstimatorConfig ec;
  ec.family = family;
  ec.hidden = c.hidden;
  ec.hidden_activation = c.activation;
  ec.adam.lr = c.lr;
  ec.sampling = c.sampling;
  ec.derangement_mode = c.derangement_mode;
  ec.abort_threshold = c.abort_threshold;
  estimators::MiEstimator est(c.d, c.d, ec, sampling::mix64(seed + 1 + family_index));

  // Every family sees the same data for a given replicate.
  sampling::Rng data_rng(seed, 0);
  sampling::Rng shuffle_rng(seed, 1);

  const std::string run_id = family.name() + "_r" + std::to_string(replicate);
  std::vector<MetricRecord> out;
  out.reserve(c.mi_levels.size() * static_cast<std::size_t>(c.iters_per_step));
  long iteration = 0;
  for (std::size_t step = 0; step < c.mi_levels.size(); ++step) {
    const double mi = c.mi_levels[step];
    const double rho = channels::rho_for_target_mi(c.d, mi);
    for (long it = 0; it < c.iters_per_step; ++it, ++iteration) {
      auto batch = sampling::gaussian_pair_batch(c.d, rho, c.batch, data_rng);
      if (c.mapping != channels::Mapping::linear) batch.y = channels::apply_mapping(c.mapping, batch.y);
      const auto shuffle = est.make_shuffle(c.batch, shuffle_rng);
      estimators::StepResult r;
      try {
        r = est.train_step(batch, shuffle);
      } catch (const DivergenceError& e) {
        throw DivergenceError(run_id + ": " + e.what(), iteration, e.tag());
      }
      out.push_back({run_id, replicate, family.name(), static_cast<int>(step), iteration, r.estimate, mi});
    }
  }
  return out;
}

}  // namespace

std::vector<MetricRecord> run_stairs(const StairsConfig& c, std::uint64_t master_seed, unsigned threads) {
  c.validate();
  const std::size_t cells = c.families.size() * c.seeds.size();
  std::function<std::vector<MetricRecord>(std::size_t)> fn = [&](std::size_t i) {
    return run_cell(c, i / c.seeds.size(), c.seeds[i % c.seeds.size()], master_seed);
  };
  auto parts = run_cells(cells, threads, fn);
  std::vector<MetricRecord> records;
  for (auto& p : parts) records.insert(records.end(), p.begin(), p.end());
  return records;
}

void write_records(const std::filesystem::path& path, const std::vector<MetricRecord>& records) {
  CsvWriter w(path, {"run_id", "seed", "family", "step_index", "iteration", "estimate_nats", "true_nats"});
  for (const auto& r : records) {
    w.row({r.run_id, std::to_string(r.seed), r.family, std::to_string(r.step_index),
           std::to_string(r.iteration), format_double(r.estimate_nats), format_double(r.true_nats)});
  }
  w.close();
}

void write_metrics(const std::filesystem::path& path, const std::vector<MetricRow>& rows) {
  CsvWriter w(path, {"family", "step_index", "true_nats", "bias_nats", "variance", "mse", "n"});
  for (const auto& r : rows) {
    w.row({r.family, std::to_string(r.step_index), format_double(r.true_nats), format_double(r.bias),
           format_double(r.variance), format_double(r.mse), std::to_string(r.n)});
  }
  w.close();
}

}  // namespace infocap::harness
