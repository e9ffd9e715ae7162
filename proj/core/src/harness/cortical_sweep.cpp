#include "infocap/harness/cortical_sweep.hpp"

#include <cmath>
#include <functional>
#include <limits>

#include "infocap/cortical/bounds.hpp"
#include "infocap/errors.hpp"
#include "infocap/harness/csv.hpp"
#include "infocap/harness/stairs.hpp"
#include "infocap/harness/worker_pool.hpp"

namespace infocap::harness {

namespace {

constexpr const char* kSweepKeys[] = {"peak_A", "avg_P", "sigma", "nakagami_m", "cost_A", "none"};

std::string format_value(double v) { return format_double(v); }

}  // namespace

CorticalConfig CorticalConfig::from(const ConfigFile& file) {
  const Section& s = file.section("cortical");
  CorticalConfig c;
  c.channel = s.get_string("channel", c.channel);
  auto& p = c.channel_params;
  p.dim = static_cast<int>(s.get_int("dim", p.dim));
  p.sigma = s.get_double("sigma", p.sigma);
  p.gamma = s.get_double("gamma", p.gamma);
  p.nakagami_m = s.get_double("nakagami_m", p.nakagami_m);
  p.middleton_P = s.get_double("middleton_P", p.middleton_P);
  p.middleton_B = s.get_double("middleton_B", p.middleton_B);

  auto& l = c.learner;
  l.latent_dim = static_cast<int>(s.get_int("latent_dim", l.latent_dim));
  l.latent = cortical::parse_latent_kind(s.get_string("latent", "normal"));
  l.gen_hidden = s.get_ints("gen_hidden", l.gen_hidden);
  l.disc_hidden = s.get_ints("disc_hidden", l.disc_hidden);
  l.hidden_activation = nn::Activation::parse(s.get_string("activation", "relu"));
  l.gen_output = nn::Activation::parse(s.get_string("gen_output", "identity"));
  l.alpha = s.get_double("alpha", l.alpha);
  l.disc_steps = static_cast<int>(s.get_int("disc_steps", l.disc_steps));
  l.batch = s.get_u64("batch", l.batch);
  l.gen_adam.lr = s.get_double("gen_lr", s.get_double("lr", l.gen_adam.lr));
  l.disc_adam.lr = s.get_double("disc_lr", s.get_double("lr", l.disc_adam.lr));
  const double beta1 = s.get_double("beta1", l.gen_adam.beta1);
  l.gen_adam.beta1 = beta1;
  l.disc_adam.beta1 = beta1;
  l.derangement_mode = sampling::parse_derangement_mode(s.get_string("derangement", "shift"));
  l.abort_threshold = s.get_double("abort_threshold", l.abort_threshold);

  auto& k = l.constraint;
  if (s.has("peak_A")) k.peak_A = s.get_double("peak_A", 0);
  k.peak_mode = cortical::parse_peak_mode(s.get_string("peak_mode", "penalty"));
  k.lambda_A = s.get_double("lambda_A", k.lambda_A);
  if (s.has("avg_P")) k.avg_P = s.get_double("avg_P", 0);
  k.avg_mode = cortical::parse_average_mode(s.get_string("avg_mode", "hard"));
  k.lambda_P = s.get_double("lambda_P", k.lambda_P);
  k.cost = cortical::parse_cost_kind(s.get_string("cost", "power"));
  k.cost_A = s.get_double("cost_A", k.cost_A);
  k.cost_gamma = s.get_double("cost_gamma", p.gamma);

  c.sweep_key = s.get_string("sweep", c.sweep_key);
  c.sweep_values = s.get_doubles("values", {});
  if (c.sweep_values.empty()) {
    if (c.sweep_key == "peak_A" && k.peak_A) c.sweep_values = {*k.peak_A};
    else if (c.sweep_key == "none") c.sweep_values = {0.0};
    else throw ConfigError("cortical: 'values' is required for sweep '" + c.sweep_key + "'");
  }
  c.iters = s.get_int("iters", c.iters);
  c.eval_samples = s.get_u64("eval_samples", c.eval_samples);
  c.cluster_eps = s.get_double("cluster_eps", c.cluster_eps);
  c.min_mass = s.get_double("min_mass", c.min_mass);
  c.seeds = s.get_u64s("seeds", c.seeds);
  s.reject_unknown();
  c.validate();
  return c;
}

void CorticalConfig::validate() const {
  bool known = false;
  for (const char* key : kSweepKeys) known = known || sweep_key == key;
  if (!known) throw ConfigError("cortical: unknown sweep parameter '" + sweep_key + "'");
  if (sweep_values.empty()) throw ConfigError("cortical: empty sweep");
  if (iters < 1) throw ConfigError("cortical: iters must be >= 1");
  if (eval_samples < 2) throw ConfigError("cortical: eval_samples must be >= 2");
  if (!(min_mass >= 0 && min_mass < 1)) throw ConfigError("cortical: min_mass must lie in [0, 1)");
  if (seeds.empty()) throw ConfigError("cortical: seeds must not be empty");
  if (learner.disc_steps < 1) throw ConfigError("cortical: disc_steps must be >= 1");
  if (learner.batch < 2) throw ConfigError("cortical: batch must be >= 2");
  if (!(learner.alpha > 0)) throw ConfigError("cortical: alpha must be > 0");
  // Resolve every sweep point up front so bad tags fail before training.
  for (double v : sweep_values) {
    auto [params, lc] = at(v);
    lc.constraint.validate();
    if (!channels::make_channel(channel, params)->reparameterizable()) {
      throw ConfigError("cortical: channel '" + channel + "' is not reparameterizable");
    }
  }
}

std::pair<channels::ChannelParams, cortical::LearnerConfig> CorticalConfig::at(double v) const {
  auto params = channel_params;
  auto lc = learner;
  if (sweep_key == "peak_A") lc.constraint.peak_A = v;
  else if (sweep_key == "avg_P") lc.constraint.avg_P = v;
  else if (sweep_key == "sigma") params.sigma = v;
  else if (sweep_key == "nakagami_m") params.nakagami_m = v;
  else if (sweep_key == "cost_A") lc.constraint.cost_A = v;
  return {params, lc};
}

double reference_bound(const std::string& channel, const channels::ChannelParams& params,
                       const cortical::ConstraintSpec& k) {
  if (channel == "independent") return 0.0;
  if (channel == "awgn") {
    const double s2 = params.sigma * params.sigma;
    if (k.peak_A && !k.avg_P && params.dim == 1) return cortical::mckellips_bound(*k.peak_A / params.sigma);
    if (k.avg_P && !k.peak_A && k.cost == cortical::CostKind::power) {
      return cortical::awgn_capacity(*k.avg_P / s2, params.dim);
    }
  }
  if (channel == "cauchy" && k.avg_P && k.cost == cortical::CostKind::cauchy_log && params.dim == 1) {
    return cortical::cauchy_log_capacity(k.cost_A, params.gamma);
  }
  return std::numeric_limits<double>::quiet_NaN();
}

CorticalRun run_cortical(const CorticalConfig& c, std::uint64_t master_seed, unsigned threads) {
  c.validate();
  struct Cell {
    std::vector<CorticalTrace> traces;
    CorticalResult result;
  };
  const std::size_t cells = c.sweep_values.size() * c.seeds.size();
  std::function<Cell(std::size_t)> fn = [&](std::size_t i) {
    const double value = c.sweep_values[i / c.seeds.size()];
    const std::uint64_t replicate = c.seeds[i % c.seeds.size()];
    const std::uint64_t seed = replicate_seed(master_seed, replicate);
    auto [params, lc] = c.at(value);
    auto channel = channels::make_channel(c.channel, params);
    cortical::CapacityLearner learner(channel, lc, seed);
    sampling::Rng rng(seed, 2);

    const std::string run_id = c.sweep_key + "=" + format_value(value) + "_r" + std::to_string(replicate);
    Cell cell;
    std::vector<cortical::CorticalTraceRow> rows;
    try {
      rows = learner.train(c.iters, rng);
    } catch (const DivergenceError& e) {
      throw DivergenceError(run_id + ": " + e.what(), e.iteration(), e.tag());
    }
    for (const auto& r : rows) cell.traces.push_back({run_id, replicate, value, r});

    auto& res = cell.result;
    res.run_id = run_id;
    res.seed = replicate;
    res.sweep_value = value;
    sampling::Rng eval_rng(seed, 3);
    res.capacity = learner.capacity_estimate(c.eval_samples, eval_rng);
    res.bound_nats = reference_bound(c.channel, params, lc.constraint);
    const Eigen::MatrixXd x = learner.sample_inputs(c.eval_samples, eval_rng);
    double eps = c.cluster_eps;
    if (!(eps > 0)) eps = lc.constraint.peak_A ? 0.05 * *lc.constraint.peak_A : 0.05;
    res.clusters = cortical::significant_clusters(cortical::cluster_mass_points(x, eps), c.min_mass);
    if (lc.constraint.peak_A) {
      res.peak_violation = std::max(0.0, x.colwise().norm().maxCoeff() - *lc.constraint.peak_A);
    }
    return cell;
  };
  auto parts = run_cells(cells, threads, fn);
  CorticalRun run;
  for (auto& p : parts) {
    run.traces.insert(run.traces.end(), p.traces.begin(), p.traces.end());
    run.results.push_back(std::move(p.result));
  }
  return run;
}

void write_cortical(const std::filesystem::path& dir, const CorticalConfig& c, const CorticalRun& run) {
  {
    CsvWriter w(dir / "records.csv",
                {"run_id", "seed", c.sweep_key, "iteration", "value", "capacity_nats", "penalty"});
    for (const auto& t : run.traces) {
      w.row({t.run_id, std::to_string(t.seed), format_double(t.sweep_value), std::to_string(t.row.iteration),
             format_double(t.row.value), format_double(t.row.capacity_nats), format_double(t.row.penalty)});
    }
    w.close();
  }
  {
    CsvWriter w(dir / "metrics.csv", {"run_id", "seed", c.sweep_key, "capacity_nats", "value_function",
                                      "bound_nats", "n_clusters", "peak_violation"});
    for (const auto& r : run.results) {
      w.row({r.run_id, std::to_string(r.seed), format_double(r.sweep_value), format_double(r.capacity.nats),
             format_double(r.capacity.value_function), format_double(r.bound_nats),
             std::to_string(r.clusters.size()), format_double(r.peak_violation)});
    }
    w.close();
  }
  const int dim = run.results.empty() || run.results.front().clusters.empty()
                      ? 1
                      : static_cast<int>(run.results.front().clusters.front().center.size());
  std::vector<std::string> header{"run_id", "seed", c.sweep_key, "cluster", "mass"};
  for (int k = 0; k < dim; ++k) header.push_back("center_" + std::to_string(k));
  CsvWriter w(dir / "clusters.csv", header);
  for (const auto& r : run.results) {
    for (std::size_t i = 0; i < r.clusters.size(); ++i) {
      std::vector<std::string> f{r.run_id, std::to_string(r.seed), format_double(r.sweep_value),
                                 std::to_string(i), format_double(r.clusters[i].mass)};
      for (int k = 0; k < dim; ++k) f.push_back(format_double(r.clusters[i].center(k)));
      w.row(f);
    }
  }
  w.close();
}

}  // namespace infocap::harness
