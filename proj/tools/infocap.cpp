// infocap: staircase benchmarks, CORTICAL and MIND sweeps, and the analytic
// check suite from a flat config file.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "infocap/errors.hpp"
#include "infocap/harness/checks.hpp"
#include "infocap/harness/config.hpp"
#include "infocap/harness/cortical_sweep.hpp"
#include "infocap/harness/csv.hpp"
#include "infocap/harness/metrics.hpp"
#include "infocap/harness/mind_sweep.hpp"
#include "infocap/harness/stairs.hpp"
#include "infocap/harness/worker_pool.hpp"

namespace fs = std::filesystem;
using namespace infocap;
using namespace infocap::harness;

namespace {

enum ExitCode { kOk = 0, kInternal = 1, kConfig = 2, kDivergence = 3, kCheckFailure = 4 };

struct Options {
  std::string config;
  std::string out = ".";
  std::uint64_t seed = 0;
  std::optional<unsigned> threads;
};

ConfigFile load_config(const Options& o, bool required) {
  if (o.config.empty()) {
    if (required) throw ConfigError("--config is required");
    return ConfigFile::parse("");
  }
  return ConfigFile::load(o.config);
}

void prepare_out(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory '" + dir.string() + "'");
}

std::ofstream open_summary(const fs::path& dir) {
  std::ofstream os(dir / "summary.txt", std::ios::binary | std::ios::trunc);
  if (!os) throw ConfigError("cannot write summary.txt");
  return os;
}

int cmd_stairs(const Options& o) {
  const auto cfg = StairsConfig::from(load_config(o, true));
  prepare_out(o.out);
  const auto records = run_stairs(cfg, o.seed, resolve_threads(o.threads));
  const auto rows = compute_metrics(records, cfg.window);
  write_records(fs::path(o.out) / "records.csv", records);
  write_metrics(fs::path(o.out) / "metrics.csv", rows);
  auto os = open_summary(o.out);
  os << "stairs d=" << cfg.d << " batch=" << cfg.batch << " iters_per_step=" << cfg.iters_per_step
     << " seeds=" << cfg.seeds.size() << " window=" << cfg.window << "\n";
  for (const auto& r : rows) {
    os << r.family << " step " << r.step_index << " true " << format_double(r.true_nats) << " bias "
       << format_double(r.bias) << " var " << format_double(r.variance) << " mse " << format_double(r.mse)
       << "\n";
  }
  return kOk;
}

int cmd_cortical(const Options& o) {
  const auto cfg = CorticalConfig::from(load_config(o, true));
  prepare_out(o.out);
  const auto run = run_cortical(cfg, o.seed, resolve_threads(o.threads));
  write_cortical(o.out, cfg, run);
  auto os = open_summary(o.out);
  os << "cortical channel=" << cfg.channel << " sweep=" << cfg.sweep_key << " iters=" << cfg.iters << "\n";
  for (const auto& r : run.results) {
    os << r.run_id << " capacity " << format_double(r.capacity.nats) << " bound " << format_double(r.bound_nats)
       << " clusters " << r.clusters.size() << ":";
    for (const auto& c : r.clusters) os << " (" << format_double(c.center(0)) << ", " << format_double(c.mass) << ")";
    os << "\n";
  }
  return kOk;
}

int cmd_mind(const Options& o) {
  const auto cfg = MindConfig::from(load_config(o, true));
  prepare_out(o.out);
  const auto run = run_mind(cfg, o.seed, resolve_threads(o.threads));
  write_mind(o.out, run);
  auto os = open_summary(o.out);
  os << "mind alphabet=" << cfg.alphabet << " channel=" << cfg.channel << " iters=" << cfg.iters << "\n";
  for (const auto& r : run.results) {
    os << r.run_id << " ser_mind " << format_double(r.ser.ser_mind) << " ser_map " << format_double(r.ser.ser_map)
       << " ser_maxl " << format_double(r.ser.ser_maxl) << " H(X) " << format_double(r.ser.estimate.h_x_bits)
       << " bits\n";
  }
  return kOk;
}

int cmd_checks(const Options& o) {
  // A config is optional; only an empty [checks] section is accepted.
  load_config(o, false).section("checks").reject_unknown();
  prepare_out(o.out);
  const auto results = run_checks(o.seed);
  CsvWriter w(fs::path(o.out) / "records.csv", {"check", "passed"});
  for (const auto& r : results) w.row({r.name, r.passed ? "1" : "0"});
  w.close();
  const bool ok = write_check_report(fs::path(o.out) / "summary.txt", results);
  for (const auto& r : results) {
    std::printf("%s %s: %s\n", r.passed ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
  }
  return ok ? kOk : kCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Neural mutual information and capacity estimation experiments"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&o](CLI::App* sub, bool config_required) {
    auto* c = sub->add_option("--config", o.config, "Configuration file")->check(CLI::ExistingFile);
    if (config_required) c->required();
    sub->add_option("--out", o.out, "Output directory")->capture_default_str();
    sub->add_option("--seed", o.seed, "Master seed")->capture_default_str();
    sub->add_option("--threads", o.threads, "Worker threads (default: INFOCAP_THREADS or hardware)");
  };
  auto* stairs = app.add_subcommand("stairs", "Gaussian staircase benchmark");
  auto* cortical = app.add_subcommand("cortical", "CORTICAL capacity sweep");
  auto* mind = app.add_subcommand("mind", "MIND decoder sweep");
  auto* checks = app.add_subcommand("checks", "Analytic check suite");
  add_common(stairs, true);
  add_common(cortical, true);
  add_common(mind, true);
  add_common(checks, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    if (stairs->parsed()) return cmd_stairs(o);
    if (cortical->parsed()) return cmd_cortical(o);
    if (mind->parsed()) return cmd_mind(o);
    return cmd_checks(o);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const DivergenceError& e) {
    std::fprintf(stderr, "divergence: %s\n", e.what());
    return kDivergence;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "numeric error: %s\n", e.what());
    return kDivergence;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kInternal;
  }
}
