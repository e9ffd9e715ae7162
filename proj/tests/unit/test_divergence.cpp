#include <doctest.h>

#include <cmath>
#include <numbers>

#include "infocap/divergence/generators.hpp"
#include "infocap/divergence/value_functions.hpp"
#include "infocap/errors.hpp"
#include "infocap/sampling/rng.hpp"

using namespace infocap::divergence;
using infocap::ConfigError;
using infocap::NumericError;

namespace {

// sup_u (u t - f(u)) on a log-spaced grid refined around the best point.
double numeric_conjugate(const FGenerator& g, double t) {
  double best_u = 1;
  double best = -1e300;
  for (double lu = -12; lu <= 12; lu += 1e-3) {
    const double u = std::exp(lu);
    const double v = u * t - g.f(u);
    if (v > best) {
      best = v;
      best_u = u;
    }
  }
  double lo = best_u * 0.99, hi = best_u * 1.01;
  for (int i = 0; i < 200; ++i) {
    const double a = lo + (hi - lo) / 3, b = hi - (hi - lo) / 3;
    (a * t - g.f(a) < b * t - g.f(b) ? lo : hi) = (a * t - g.f(a) < b * t - g.f(b) ? a : b);
  }
  const double u = 0.5 * (lo + hi);
  return u * t - g.f(u);
}

}  // namespace

TEST_SUITE("divergence") {

TEST_CASE("generators vanish at one") {
  for (auto k : {FDivergence::kl, FDivergence::gan, FDivergence::hd}) {
    CHECK(FGenerator::of(k).f(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(parse_fdivergence(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_fdivergence("tv"), ConfigError);
}

TEST_CASE("conjugates agree with the numeric supremum") {
  // The gan conjugate omits the generator's log 4 shift.
  const double shift_gan = std::log(4.0);
  for (double t : {-2.0, -0.5, 0.3, 1.0}) {
    CHECK(numeric_conjugate(FGenerator::of(FDivergence::kl), t) ==
          doctest::Approx(FGenerator::of(FDivergence::kl).conjugate(t)).epsilon(1e-7));
  }
  for (double t : {-3.0, -1.0, -0.2}) {
    CHECK(numeric_conjugate(FGenerator::of(FDivergence::gan), t) + shift_gan ==
          doctest::Approx(FGenerator::of(FDivergence::gan).conjugate(t)).epsilon(1e-7));
  }
  for (double t : {-2.0, 0.0, 0.5}) {
    CHECK(numeric_conjugate(FGenerator::of(FDivergence::hd), t) ==
          doctest::Approx(FGenerator::of(FDivergence::hd).conjugate(t)).epsilon(1e-7));
  }
}

TEST_CASE("optimal discriminator maps back to the log ratio") {
  for (auto k : {FDivergence::kl, FDivergence::gan, FDivergence::hd}) {
    const auto g = FGenerator::of(k);
    for (double r : {1e-3, 0.5, 1.0, 7.0, 1e4}) {
      CHECK(g.log_ratio(g.optimal_discriminator(r)) == doctest::Approx(std::log(r)).epsilon(1e-12));
    }
  }
  CHECK(FGenerator::of(FDivergence::gan).optimal_discriminator(1.0) == 0.5);
  CHECK(FGenerator::of(FDivergence::hd).optimal_discriminator(4.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(FGenerator::of(FDivergence::gan).check_domain(1.5), NumericError);
}

TEST_CASE("f-DIME value functions on hand-computed tables") {
  const std::vector<double> dj{2.0, 0.5};
  const std::vector<double> dm{1.0, 3.0};
  // (log 2 + log 0.5)/2 - 2 + 1
  CHECK(value_fdime(FGenerator::of(FDivergence::kl), dj, dm).total == doctest::Approx(-1.0));
  const std::vector<double> gj{0.25, 0.5};
  const std::vector<double> gm{0.5, 0.75};
  const double gan = 0.5 * (std::log(0.75) + std::log(0.5)) + 0.5 * (std::log(0.5) + std::log(0.75)) + std::log(4.0);
  CHECK(value_fdime(FGenerator::of(FDivergence::gan), gj, gm).total == doctest::Approx(gan));
  // 2 - 1.25 - (1 + 1/3)/2
  CHECK(value_fdime(FGenerator::of(FDivergence::hd), dj, dm).total == doctest::Approx(2 - 1.25 - 2.0 / 3));
  // 2 * 0 - (1 + 9)/2
  CHECK(value_gamma(2.0, dj, dm).total == doctest::Approx(-5.0));
}

TEST_CASE("critic value functions") {
  const std::vector<double> tj{1.0, 2.0};
  const std::vector<double> tm{0.0, std::log(3.0)};
  CHECK(value_mine(tj, tm).total == doctest::Approx(1.5 - std::log(2.0)));
  CHECK(value_nwj(tj, tm).total == doctest::Approx(1.5 - 0.5 * (std::exp(-1.0) + 3 * std::exp(-1.0))));
  // Clipping at tau = 0.5 caps log 3.
  CHECK(value_smile(tj, tm, 0.5).total == doctest::Approx(1.5 - std::log(0.5 * (1 + std::exp(0.5)))));
  CHECK(value_smile(tj, tm, INFINITY).total == doctest::Approx(value_mine(tj, tm).total));
  CHECK_THROWS_AS(value_smile(tj, tm, 0.0), ConfigError);
}

TEST_CASE("cpc never exceeds log N") {
  infocap::sampling::Rng rng(3);
  for (int n : {2, 8, 64}) {
    for (int t = 0; t < 20; ++t) {
      Eigen::MatrixXd s(n, n);
      for (Eigen::Index i = 0; i < s.size(); ++i) s.data()[i] = 30 * rng.normal();
      s.diagonal().array() += 100;
      CHECK(value_cpc(s).total <= std::log(double(n)) + 1e-12);
    }
  }
}

TEST_CASE("log-mean-exp is stable") {
  const std::vector<double> big{1000.0, 1000.0};
  CHECK(log_mean_exp(big) == 1000.0);
  const std::vector<double> mixed{0.0, std::log(3.0)};
  CHECK(log_mean_exp(mixed) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("moving average works in log space") {
  MovingAverage ema;
  ema.update(std::log(2.0));
  CHECK(ema.log_value == doctest::Approx(std::log(2.0)));
  ema.update(std::log(12.0));
  CHECK(ema.log_value == doctest::Approx(std::log(0.9 * 2 + 0.1 * 12)));
  // The value itself ignores the average; only the average is updated.
  const std::vector<double> t{0.0};
  const double before = ema.log_value;
  CHECK(value_mine(t, t, &ema).total == 0.0);
  CHECK(ema.log_value != before);
}

TEST_CASE("non-finite inputs are rejected") {
  const std::vector<double> ok{0.0};
  const std::vector<double> bad{NAN};
  CHECK_THROWS_AS(value_mine(bad, ok), NumericError);
  CHECK_THROWS_AS(value_nwj(ok, bad), NumericError);
}

}  // TEST_SUITE
