#include "infocap/harness/checks.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

#include "infocap/channels/gaussian.hpp"
#include "infocap/channels/noise.hpp"
#include "infocap/cortical/bounds.hpp"
#include "infocap/divergence/value_functions.hpp"
#include "infocap/errors.hpp"
#include "infocap/estimators/analytic.hpp"
#include "infocap/estimators/estimator.hpp"
#include "infocap/estimators/oracle.hpp"
#include "infocap/harness/csv.hpp"
#include "infocap/harness/metrics.hpp"
#include "infocap/mind/decoder.hpp"
#include "infocap/mind/oracles.hpp"
#include "infocap/nn/gradient_check.hpp"

namespace infocap::harness {

namespace {

using estimators::Family;
using Matrix = Eigen::MatrixXd;

struct Outcome {
  bool passed;
  std::string detail;
};

std::string num(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

const Matrix& toy_2x2() {
  static const Matrix pmf = (Matrix(2, 2) << 0.4, 0.1, 0.1, 0.4).finished();
  return pmf;
}

const Matrix& toy_3x3() {
  static const Matrix pmf =
      (Matrix(3, 3) << 0.20, 0.05, 0.03, 0.04, 0.25, 0.06, 0.02, 0.05, 0.30).finished();
  return pmf;
}

std::vector<Family> all_families() {
  std::vector<Family> out;
  for (const char* tag : {"kl_dime", "gan_dime", "hd_dime", "gamma_dime(2)", "gamma_dime(0.5)", "mine",
                          "nwj", "smile(1)", "smile(inf)", "cpc"}) {
    out.push_back(Family::parse(tag));
  }
  return out;
}

std::vector<Family> fdime_families() {
  std::vector<Family> out;
  for (const auto& f : all_families()) {
    if (f.is_fdime()) out.push_back(f);
  }
  return out;
}

Outcome gradient_check_family(const Family& f, std::uint64_t seed) {
  const std::size_t n = 6;
  const int cols = static_cast<int>(f.needs_pair_matrix() ? n * n : 2 * n);
  nn::Mlp net({4, 8, 8, 1}, {nn::Activation::tanh(), nn::Activation::tanh(), nn::Activation::identity()},
              seed);
  sampling::Rng rng(seed, 7);
  Matrix in(4, cols);
  for (Eigen::Index i = 0; i < in.size(); ++i) in.data()[i] = rng.normal();
  auto loss = [&](const Matrix& out, Matrix* grad) {
    auto obj = estimators::evaluate_objective(f, out, n, nullptr, grad != nullptr);
    if (grad) *grad = obj.grad_raw;
    return obj.value.total;
  };
  const auto report = nn::gradient_check(net, in, loss, 1e-5);
  return {report.passed, "max rel err " + num(report.max_relative_error) + " over " +
                             std::to_string(report.parameters_checked) + " params"};
}

Outcome mlp_gradient_check(std::uint64_t seed) {
  nn::Mlp net({3, 6, 5, 2}, {nn::Activation::softplus(), nn::Activation::softplus(), nn::Activation::identity()},
              seed);
  sampling::Rng rng(seed, 8);
  Matrix in(3, 7);
  for (Eigen::Index i = 0; i < in.size(); ++i) in.data()[i] = rng.normal();
  auto loss = [](const Matrix& out, Matrix* grad) {
    if (grad) *grad = out;
    return 0.5 * out.squaredNorm();
  };
  const auto report = nn::gradient_check(net, in, loss, 1e-5);
  return {report.passed, "max rel err " + num(report.max_relative_error)};
}

Outcome batching_invariance(std::uint64_t seed) {
  nn::Mlp net({3, 16, 16, 2}, {nn::Activation::relu(), nn::Activation::relu(), nn::Activation::identity()}, seed);
  sampling::Rng rng(seed, 9);
  Matrix in(3, 11);
  for (Eigen::Index i = 0; i < in.size(); ++i) in.data()[i] = rng.normal();
  const Matrix all = net.evaluate(in);
  double worst = 0;
  for (Eigen::Index c = 0; c < in.cols(); ++c) {
    worst = std::max(worst, (net.evaluate(in.col(c)) - all.col(c)).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-12, "max abs diff " + num(worst)};
}

Outcome value_zeros() {
  std::string bad;
  for (const auto& f : all_families()) {
    // Raw outputs realizing a unit density ratio: D = 1 for kl/gamma (softplus
    // inverse of 1), D = 1/2 for gan/smile, D = 1 for hd, T = 0 for mine/cpc,
    // T = 1 for nwj.
    double raw = 0;
    switch (f.kind) {
      case estimators::FamilyKind::kl_dime:
      case estimators::FamilyKind::hd_dime:
      case estimators::FamilyKind::gamma_dime: raw = std::log(std::expm1(1.0)); break;
      case estimators::FamilyKind::nwj: raw = 1.0; break;
      default: raw = 0.0;
    }
    const std::size_t n = 4;
    const Matrix r = Matrix::Constant(1, static_cast<Eigen::Index>(f.needs_pair_matrix() ? n * n : 2 * n), raw);
    const auto obj = estimators::evaluate_objective(f, r, n, nullptr, false);
    const double readout = f.is_fdime() ? estimators::fdime_readout_at_ratio(f, 0.0) : obj.estimate;
    // The kl-type families pass through softplus(log(e - 1)), which is 1 only
    // up to rounding; the readout map itself must vanish exactly.
    const bool exact_value = !(f.kind == estimators::FamilyKind::kl_dime ||
                               f.kind == estimators::FamilyKind::hd_dime ||
                               f.kind == estimators::FamilyKind::gamma_dime);
    // gamma_dime's value sits at -1 for a unit ratio (its bound is value + 1).
    const double v = obj.value.total + (f.kind == estimators::FamilyKind::gamma_dime ? 1.0 : 0.0);
    const bool value_ok = exact_value ? v == 0.0 : std::abs(v) <= 1e-15;
    if (!value_ok || readout != 0.0) bad += f.name() + " ";
  }
  // Value functions on exact discriminator values.
  const std::vector<double> one{1.0, 1.0};
  const std::vector<double> half{0.5, 0.5};
  const std::vector<double> zero{0.0, 0.0};
  using divergence::FDivergence;
  using divergence::FGenerator;
  if (divergence::value_fdime(FGenerator::of(FDivergence::kl), one, one).total != 0.0) bad += "value_kl ";
  if (divergence::value_fdime(FGenerator::of(FDivergence::gan), half, half).total != 0.0) bad += "value_gan ";
  if (divergence::value_fdime(FGenerator::of(FDivergence::hd), one, one).total != 0.0) bad += "value_hd ";
  if (divergence::value_gamma(2.0, one, one).total + 1.0 != 0.0) bad += "value_gamma ";
  if (divergence::value_mine(zero, zero).total != 0.0) bad += "value_mine ";
  if (divergence::value_nwj(one, one).total != 0.0) bad += "value_nwj ";
  if (divergence::value_cpc(Matrix::Zero(3, 3)).total != 0.0) bad += "value_cpc ";
  return {bad.empty(), bad.empty() ? "all exact" : "nonzero: " + bad};
}

Outcome enumeration_equivalence(const Matrix& pmf, double frozen) {
  const double mi = estimators::discrete_mutual_information(pmf);
  double lo = mi;
  double hi = mi;
  for (const auto& f : fdime_families()) {
    const double v = estimators::enumerated_readout(f, pmf);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const bool frozen_ok = std::isnan(frozen) || std::abs(mi - frozen) <= 5e-6;
  return {hi - lo <= 1e-12 && frozen_ok, "MI " + num(mi) + " spread " + num(hi - lo)};
}

Outcome permuted_optimum_bisection() {
  const Matrix& pmf = toy_3x3();
  const Eigen::VectorXd px = pmf.rowwise().sum();
  const Eigen::RowVectorXd py = pmf.colwise().sum();
  const std::size_t n = 8;
  double worst = 0;
  for (std::size_t k = 0; k <= 3; ++k) {
    const double wq = static_cast<double>(n - k) / static_cast<double>(n);
    const double wp = static_cast<double>(k) / static_cast<double>(n);
    Matrix d(3, 3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        const double p = pmf(i, j);
        const double q = px(i) * py(j);
        // The value is separable and strictly concave in each cell; bisect
        // the sign of p/D - (wq q + wp p).
        double a = 1e-12;
        double b = 1e12;
        for (int it = 0; it < 400 && b - a > 1e-15 * b; ++it) {
          const double m = std::sqrt(a * b) > 0 && b / a > 4 ? std::sqrt(a * b) : 0.5 * (a + b);
          (p / m - (wq * q + wp * p) > 0 ? a : b) = m;
        }
        d(i, j) = 0.5 * (a + b);
        const double formula = estimators::permuted_optimum(p / q, n, k);
        worst = std::max(worst, std::abs(d(i, j) - formula) / formula);
      }
    }
    // The brute-force table must also beat small perturbations of itself.
    const double best = estimators::permuted_value_kl(pmf, d, n, k);
    for (double s : {0.999, 1.001}) {
      if (estimators::permuted_value_kl(pmf, d * s, n, k) > best) return {false, "not a maximum at K=" + std::to_string(k)};
    }
  }
  const double ceiling = std::log(estimators::permuted_optimum(1e6, 128, 1));
  return {worst <= 1e-9, "max rel diff " + num(worst) + "; ceiling log D*(R=1e6 N=128 K=1) = " + num(ceiling)};
}

Outcome mse_identity(std::uint64_t seed) {
  std::vector<MetricRecord> recs{{"a", 1, "f", 0, 0, 2.1, 2.0}, {"a", 2, "f", 0, 0, 1.9, 2.0}};
  auto rows = compute_metrics(recs, 1);
  const auto& r = rows.at(0);
  bool ok = std::abs(r.bias) <= 1e-12 && std::abs(r.variance - 0.01) <= 1e-12 && std::abs(r.mse - 0.01) <= 1e-12;
  sampling::Rng rng(seed, 10);
  std::vector<MetricRecord> many;
  for (int step = 0; step < 3; ++step) {
    for (long it = 0; it < 50; ++it) many.push_back({"b", 1, "g", step, step * 50 + it, 3 * rng.normal() + step, 2.0 * step});
  }
  for (const auto& m : compute_metrics(many, 20)) {
    ok = ok && std::abs(m.mse - (m.bias * m.bias + m.variance)) <= 1e-12 && m.n == 20;
  }
  return {ok, "toy bias " + num(r.bias) + " var " + num(r.variance) + " mse " + num(r.mse)};
}

Outcome capacity_identity() {
  // Discriminator D = alpha R is optimal for the alpha value function; the
  // capacity readout must return the MI for every alpha.
  const Matrix& pmf = toy_3x3();
  const Eigen::VectorXd px = pmf.rowwise().sum();
  const Eigen::RowVectorXd py = pmf.colwise().sum();
  const double mi = estimators::discrete_mutual_information(pmf);
  double worst = 0;
  for (double alpha : {0.25, 0.5, 1.0, 2.0, 4.0}) {
    double j = 0;
    for (int i = 0; i < 3; ++i) {
      for (int k = 0; k < 3; ++k) {
        const double q = px(i) * py(k);
        const double d = alpha * pmf(i, k) / q;
        j += alpha * pmf(i, k) * std::log(d) - q * d;
      }
    }
    worst = std::max(worst, std::abs(cortical::capacity_from_value(j, alpha) - mi));
  }
  return {worst <= 1e-12, "max |C - I| " + num(worst)};
}

Outcome gaussian_variance(std::uint64_t seed) {
  const double mi = 2.0;
  const std::size_t m = 64;
  const int reps = 1000;
  const double rho = channels::rho_for_target_mi(1, mi);
  const Family f = Family::parse("kl_dime");
  sampling::Rng rng(seed, 11);
  auto log_ratio = [rho](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    return channels::gaussian_log_ratio(rho, x, y);
  };
  std::vector<double> est;
  est.reserve(reps);
  const auto id = sampling::Shuffle::identity(m);
  for (int r = 0; r < reps; ++r) {
    const auto b = sampling::gaussian_pair_batch(1, rho, m, rng);
    est.push_back(estimators::estimate_with_oracle_ratio(f, log_ratio, b, id).value_nats);
  }
  double mean = 0;
  for (double e : est) mean += e;
  mean /= reps;
  double var = 0;
  for (double e : est) var += (e - mean) * (e - mean);
  var /= reps - 1;
  const double expect = estimators::variance_gaussian(mi, m);
  return {std::abs(var / expect - 1.0) <= 0.10, "MC var " + num(var) + " vs " + num(expect)};
}

Outcome staircase_inverse() {
  double worst = 0;
  // At d = 1 and 10 nats 1 - rho^2 is e^-20 and the round trip loses ~8
  // digits to cancellation, so d = 1 stops at 6 nats.
  for (int d : {1, 5, 20}) {
    for (double mi : {0.5, 2.0, 6.0, 10.0}) {
      if (d == 1 && mi > 6.0) continue;
      worst = std::max(worst, std::abs(channels::true_mi_gaussian(d, channels::rho_for_target_mi(d, mi)) - mi));
    }
  }
  return {worst <= 1e-10, "max |I(rho(I)) - I| " + num(worst)};
}

Outcome noise_models() {
  std::string bad;
  for (double m : {0.5, 0.6, 0.8, 1.0}) {
    const channels::NakagamiNoiseModel nk{m, 2.0};
    if (std::abs(nk.real_variance() + nk.imag_variance() - 2.0) > 1e-12) bad += "nakagami(" + num(m) + ") ";
  }
  const channels::MiddletonNoiseModel mid{0.05, 5.0, 0.7};
  const double span = 60.0 * std::sqrt(mid.variance());
  const int steps = 200000;
  const double h = 2 * span / steps;
  double mass = 0;
  double second = 0;
  for (int i = 0; i <= steps; ++i) {
    const double x = -span + h * i;
    const double w = (i == 0 || i == steps) ? 0.5 : 1.0;
    mass += w * mid.pdf(x) * h;
    second += w * x * x * mid.pdf(x) * h;
  }
  if (std::abs(mass - 1.0) > 1e-9) bad += "middleton_mass ";
  if (std::abs(second - mid.variance()) > 1e-8) bad += "middleton_variance ";
  return {bad.empty(), "middleton mass " + num(mass) + (bad.empty() ? "" : " failed: " + bad)};
}

Outcome genie_consistency() {
  std::string bad;
  for (const auto& a : {mind::Alphabet::pam4_nonuniform(0.05), mind::Alphabet::pam(4), mind::Alphabet::bpsk()}) {
    const double sigma = 0.6;
    auto loglik = [sigma](const Eigen::VectorXd& y, const Eigen::VectorXd& x) {
      return -0.5 * (y - x).squaredNorm() / (sigma * sigma);
    };
    for (int i = 0; i <= 2000; ++i) {
      Eigen::VectorXd y(1);
      // Offset keeps the grid off exact decision ties of symmetric alphabets.
      y(0) = -5.0 + 0.005 * i + 1.234e-4;
      const Eigen::VectorXd post = mind::exact_posterior(loglik, a, y);
      const Eigen::VectorXd d = (1.0 + post.array()).inverse().matrix();
      if (mind::decode_from_discriminator(d) != mind::map_oracle(loglik, a, y)) {
        bad = "mismatch at y=" + num(y(0));
        break;
      }
    }
  }
  return {bad.empty(), bad.empty() ? "decode == MAP on 2001-point grids" : bad};
}

Outcome posterior_normalization(std::uint64_t seed) {
  sampling::Rng rng(seed, 12);
  double worst = 0;
  for (int t = 0; t < 100; ++t) {
    Eigen::VectorXd d(5);
    for (int i = 0; i < 5; ++i) d(i) = rng.uniform_open();
    const auto p = mind::posterior_from_discriminator(d);
    worst = std::max(worst, std::abs(p.normalized.sum() - 1.0));
    // Rescaling the raw table leaves the normalized one unchanged.
    const Eigen::VectorXd scaled = 3.7 * p.raw;
    worst = std::max(worst, (scaled / scaled.sum() - p.normalized).cwiseAbs().maxCoeff());
  }
  return {worst <= 1e-12, "max deviation " + num(worst)};
}

Outcome derangements(std::uint64_t seed) {
  sampling::Rng rng(seed, 13);
  for (std::size_t n : {2, 3, 64, 128}) {
    for (auto mode : {sampling::DerangementMode::random, sampling::DerangementMode::shift}) {
      for (int t = 0; t < 200; ++t) {
        const auto s = sampling::derange(n, mode, rng);
        std::vector<bool> seen(n, false);
        for (std::size_t i = 0; i < n; ++i) {
          if (s.perm[i] == i || seen[s.perm[i]]) return {false, "bad derangement for N=" + std::to_string(n)};
          seen[s.perm[i]] = true;
        }
      }
    }
  }
  double fixed = 0;
  const int trials = 20000;
  for (int t = 0; t < trials; ++t) fixed += static_cast<double>(sampling::permute_naive(64, rng).fixed_points);
  fixed /= trials;
  // Mean fixed points of a uniform permutation is 1 with unit variance.
  return {std::abs(fixed - 1.0) <= 5.0 / std::sqrt(trials), "naive mean fixed points " + num(fixed)};
}

Outcome adam_first_step() {
  nn::Mlp net({1, 1}, {nn::Activation::identity()}, 1);
  net.layer(0).weight(0, 0) = 0;
  net.layer(0).bias(0) = 0;
  nn::AdamState st = nn::AdamState::for_network(net, {0.1, 0.9, 0.999, 1e-8});
  nn::ParameterGradients g;
  g.weights = {Matrix::Constant(1, 1, 1.0)};
  g.biases = {Eigen::VectorXd::Constant(1, 1.0)};
  nn::adam_step(net, g, st);
  const double w = net.layer(0).weight(0, 0);
  return {std::abs(w + 0.1) <= 1e-8, "w after one step " + num(w)};
}

}  // namespace

std::vector<CheckResult> run_checks(std::uint64_t seed) {
  std::vector<std::pair<std::string, std::function<Outcome()>>> suite;
  for (const auto& f : all_families()) {
    suite.emplace_back("gradient/" + f.name(), [f, seed] { return gradient_check_family(f, seed); });
  }
  suite.emplace_back("gradient/mlp_softplus", [seed] { return mlp_gradient_check(seed); });
  suite.emplace_back("mlp/batching_invariance", [seed] { return batching_invariance(seed); });
  suite.emplace_back("adam/first_step", adam_first_step);
  suite.emplace_back("value/zeros_at_unit_ratio", value_zeros);
  suite.emplace_back("oracle/enumeration_2x2", [] { return enumeration_equivalence(toy_2x2(), 0.19274); });
  suite.emplace_back("oracle/enumeration_3x3", [] { return enumeration_equivalence(toy_3x3(), std::nan("")); });
  suite.emplace_back("analytic/permuted_optimum", permuted_optimum_bisection);
  suite.emplace_back("analytic/gaussian_variance", [seed] { return gaussian_variance(seed); });
  suite.emplace_back("metrics/mse_identity", [seed] { return mse_identity(seed); });
  suite.emplace_back("cortical/capacity_identity", capacity_identity);
  suite.emplace_back("channels/staircase_inverse", staircase_inverse);
  suite.emplace_back("channels/noise_models", noise_models);
  suite.emplace_back("mind/genie_consistency", genie_consistency);
  suite.emplace_back("mind/posterior_normalization", [seed] { return posterior_normalization(seed); });
  suite.emplace_back("sampling/derangements", [seed] { return derangements(seed); });

  std::vector<CheckResult> out;
  for (auto& [name, fn] : suite) {
    CheckResult r{name, false, ""};
    try {
      auto o = fn();
      r.passed = o.passed;
      r.detail = std::move(o.detail);
    } catch (const std::exception& e) {
      r.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(r));
  }
  return out;
}

bool write_check_report(const std::filesystem::path& path, const std::vector<CheckResult>& results) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ConfigError("cannot write '" + path.string() + "'");
  std::size_t passed = 0;
  for (const auto& r : results) {
    os << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << '\n';
    passed += r.passed ? 1 : 0;
  }
  os << passed << "/" << results.size() << " checks passed\n";
  return passed == results.size();
}

}  // namespace infocap::harness
