#include <doctest.h>

#include <cmath>
#include <numbers>

#include "../support/oracles.hpp"
#include "infocap/channels/gaussian.hpp"
#include "infocap/channels/noise.hpp"
#include "infocap/channels/scenario.hpp"
#include "infocap/errors.hpp"

using namespace infocap;
using namespace infocap::channels;
using Eigen::MatrixXd;
using Eigen::VectorXd;

TEST_SUITE("channels") {

TEST_CASE("gaussian MI formula and its inverse") {
  CHECK(true_mi_gaussian(5, 0.5) == doctest::Approx(-2.5 * std::log(0.75)));
  CHECK(true_mi_gaussian(3, 0.0) == 0.0);
  for (int d : {1, 5, 20}) {
    for (double mi : {0.1, 2.0, 6.0}) {
      CHECK(true_mi_gaussian(d, rho_for_target_mi(d, mi)) == doctest::Approx(mi).epsilon(1e-10));
    }
  }
  CHECK_THROWS_AS(true_mi_gaussian(2, 1.0), ConfigError);
  CHECK_THROWS_AS(rho_for_target_mi(2, -1.0), ConfigError);
}

TEST_CASE("gaussian log ratio equals the density quotient") {
  const double rho = 0.7;
  VectorXd x(2), y(2);
  x << 0.3, -1.1;
  y << 0.9, -0.4;
  double expect = 0;
  for (int k = 0; k < 2; ++k) {
    const double q = (x(k) * x(k) - 2 * rho * x(k) * y(k) + y(k) * y(k)) / (1 - rho * rho);
    const double joint = std::exp(-0.5 * q) / (2 * std::numbers::pi * std::sqrt(1 - rho * rho));
    expect += std::log(joint / (oracle::normal_pdf(x(k), 0, 1) * oracle::normal_pdf(y(k), 0, 1)));
  }
  CHECK(gaussian_log_ratio(rho, x, y) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("mappings are strictly increasing and invertible") {
  for (auto m : {Mapping::linear, Mapping::cubic, Mapping::half_cube, Mapping::asinh}) {
    double prev = -INFINITY;
    for (double v = -3; v <= 3; v += 0.25) {
      const double a = apply_mapping(m, v);
      CHECK(a > prev);
      prev = a;
      CHECK(invert_mapping(m, a) == doctest::Approx(v).epsilon(1e-12));
    }
    CHECK(parse_mapping(to_string(m)) == m);
  }
  CHECK(parse_mapping("gaussian") == Mapping::linear);
  CHECK(apply_mapping(Mapping::cubic, 2.0) == 8.0);
  CHECK_THROWS_AS(parse_mapping("square"), ConfigError);
}

TEST_CASE("awgn output statistics and likelihood") {
  AwgnChannel ch(1, 0.5);
  sampling::Rng rng(1);
  const MatrixXd x = MatrixXd::Constant(1, 200000, 1.0);
  const MatrixXd n = ch.apply(x, rng) - x;
  CHECK(n.mean() == doctest::Approx(0.0).scale(1.0).epsilon(0.01));
  CHECK(n.squaredNorm() / n.size() == doctest::Approx(0.25).epsilon(0.01));
  VectorXd yv(1), xv(1);
  yv << 0.3;
  xv << 1.0;
  CHECK(ch.log_likelihood(yv, xv) == doctest::Approx(std::log(oracle::normal_pdf(0.3, 1.0, 0.5))));
}

TEST_CASE("channels act column by column") {
  ChannelParams p;
  p.dim = 2;
  for (const char* tag : {"awgn", "cauchy", "middleton", "nonlinear_sqrt", "independent"}) {
    auto ch = make_channel(tag, p);
    MatrixXd x = MatrixXd::Random(2, 6).cwiseAbs();
    sampling::Rng r1(3), r2(3);
    const MatrixXd y1 = ch->apply(x, r1);
    x(0, 4) += 0.5;
    const MatrixXd y2 = ch->apply(x, r2);
    CAPTURE(tag);
    for (int c = 0; c < 6; ++c) {
      if (c != 4) CHECK((y1.col(c) - y2.col(c)).norm() == 0.0);
    }
  }
}

TEST_CASE("nakagami component variances") {
  const NakagamiNoiseModel m{0.6, 2.0};
  CHECK(m.b() == doctest::Approx(std::sqrt(1 / 0.6 - 1)));
  CHECK(m.real_variance() + m.imag_variance() == doctest::Approx(2.0).epsilon(1e-14));
  sampling::Rng rng(4);
  const MatrixXd n = nakagami_noise(m, 200000, rng);
  CHECK(n.row(0).squaredNorm() / n.cols() == doctest::Approx(m.real_variance()).epsilon(0.02));
  CHECK(n.row(1).squaredNorm() / n.cols() == doctest::Approx(m.imag_variance()).epsilon(0.02));
  CHECK_THROWS_AS((NakagamiNoiseModel{0.3, 1.0}.validate()), ConfigError);
}

TEST_CASE("middleton density integrates to one with the mixture variance") {
  const MiddletonNoiseModel m{0.05, 5.0, 0.8};
  const double span = 40 * std::sqrt(m.variance());
  CHECK(oracle::simpson([&](double v) { return m.pdf(v); }, -span, span, 100000) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(oracle::simpson([&](double v) { return v * v * m.pdf(v); }, -span, span, 100000) ==
        doctest::Approx(0.8 * (0.95 + 0.25)).epsilon(1e-9));
  CHECK(m.log_pdf(1.3) == doctest::Approx(std::log(m.pdf(1.3))).epsilon(1e-14));
  CHECK(m.pdf(0.7) == doctest::Approx(0.95 * oracle::normal_pdf(0.7, 0, std::sqrt(0.8)) +
                                      0.05 * oracle::normal_pdf(0.7, 0, std::sqrt(4.0))));
  sampling::Rng rng(5);
  const MatrixXd n = middleton_noise(m, 1, 400000, rng);
  CHECK(n.squaredNorm() / n.size() == doctest::Approx(m.variance()).epsilon(0.02));
}

TEST_CASE("cauchy noise has median absolute value gamma") {
  sampling::Rng rng(6);
  MatrixXd n = cauchy_noise(0.7, 1, 100001, rng).cwiseAbs();
  std::sort(n.data(), n.data() + n.size());
  CHECK(n(0, 50000) == doctest::Approx(0.7).epsilon(0.03));
}

TEST_CASE("rayleigh-equivalent channel") {
  sampling::Rng rng(7);
  const MatrixXd s = MatrixXd::Constant(1, 200000, 0.25);
  CHECK(rayleigh_equiv_output(s, rng).mean() == doctest::Approx(4.0).epsilon(0.02));
  CHECK_THROWS_AS(rayleigh_equiv_output(MatrixXd::Constant(1, 2, 1.5), rng), ConfigError);
  CHECK_THROWS_AS(rayleigh_equiv_output(MatrixXd::Constant(1, 2, 0.0), rng), ConfigError);

  // Pullback against a finite difference with frozen noise.
  RayleighEquivChannel ch;
  MatrixXd x(1, 3);
  x << 0.2, 0.5, 0.9;
  const MatrixXd w = (MatrixXd(1, 3) << 1.0, -2.0, 0.5).finished();
  sampling::Rng r0(8);
  const MatrixXd y = ch.apply(x, r0);
  const MatrixXd g = ch.pullback(x, y, w);
  for (int c = 0; c < 3; ++c) {
    MatrixXd up = x, dn = x;
    up(0, c) += 1e-7;
    dn(0, c) -= 1e-7;
    sampling::Rng a(8), b(8);
    const double fd = (w.cwiseProduct(ch.apply(up, a)).sum() - w.cwiseProduct(ch.apply(dn, b)).sum()) / 2e-7;
    CHECK(g(0, c) == doctest::Approx(fd).epsilon(1e-6));
  }
  VectorXd yv(1), xv(1);
  yv << 2.0;
  xv << 0.5;
  CHECK(ch.log_likelihood(yv, xv) == doctest::Approx(std::log(0.5) - 1.0));
}

TEST_CASE("nonlinear sqrt channel") {
  CHECK(sqrt_warp(4.0) == 2.0);
  CHECK(sqrt_warp(-9.0) == -3.0);
  NonlinearSqrtChannel ch(1, 0.1);
  CHECK_FALSE(ch.reparameterizable());
  VectorXd yv(1), xv(1);
  yv << 1.1;
  xv << 1.0;
  CHECK(ch.log_likelihood(yv, xv) == doctest::Approx(std::log(oracle::normal_pdf(1.1, 1.0, 0.1))));
}

TEST_CASE("independence channel ignores its input") {
  IndependentChannel ch(1, 1.0);
  sampling::Rng a(9), b(9);
  CHECK(ch.apply(MatrixXd::Zero(1, 5), a) == ch.apply(MatrixXd::Constant(1, 5, 7.0), b));
  CHECK(ch.pullback(MatrixXd::Ones(1, 2), MatrixXd::Ones(1, 2), MatrixXd::Ones(1, 2)).isZero());
}

TEST_CASE("channel factory") {
  ChannelParams p;
  for (const char* tag : {"awgn", "independent", "cauchy", "nakagami", "middleton", "rayleigh_equiv", "nonlinear_sqrt"}) {
    CHECK(make_channel(tag, p)->name() == tag);
  }
  CHECK(make_channel("nakagami", p)->input_dim() == 2);
  CHECK_THROWS_AS(make_channel("rician", p), ConfigError);
  p.sigma = -1;
  CHECK_THROWS_AS(make_channel("awgn", p), ConfigError);
  AwgnChannel awgn(1, 1.0);
  CHECK_THROWS_AS(IndependentChannel(1, 1.0).log_likelihood(VectorXd::Zero(1), VectorXd::Zero(1)), ConfigError);
}

}  // TEST_SUITE
