#include <doctest.h>

#include <cmath>

#include "../support/oracles.hpp"
#include "infocap/channels/scenario.hpp"
#include "infocap/errors.hpp"
#include "infocap/mind/alphabet.hpp"
#include "infocap/mind/decoder.hpp"
#include "infocap/mind/evaluation.hpp"
#include "infocap/mind/oracles.hpp"

using namespace infocap;
using namespace infocap::mind;
using Eigen::MatrixXd;
using Eigen::VectorXd;

namespace {

VectorXd vec(std::initializer_list<double> v) {
  VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

LogLikelihoodFn gaussian_loglik(double sigma) {
  return [sigma](const VectorXd& y, const VectorXd& x) {
    double s = 0;
    for (Eigen::Index k = 0; k < y.size(); ++k) s += std::log(oracle::normal_pdf(y(k), x(k), sigma));
    return s;
  };
}

}  // namespace

TEST_SUITE("mind") {

TEST_CASE("pam alphabets") {
  const auto a = Alphabet::pam(4);
  REQUIRE(a.size() == 4);
  CHECK(a.symbols[0](0) == -3.0);
  CHECK(a.symbols[2](0) == 1.0);
  CHECK(a.nominal_energy() == 5.0);
  CHECK(a.source_entropy_bits() == doctest::Approx(2.0));
  const auto nu = Alphabet::pam4_nonuniform(0.05);
  CHECK(nu.prior[1] == doctest::Approx(0.025));
  CHECK(nu.source_entropy_bits() == doctest::Approx(1.2863969571159561).epsilon(1e-12));
  CHECK(sigma_for_ebn0(nu, 7.0) == doctest::Approx(0.49940743824167255).epsilon(1e-12));
  CHECK(Alphabet::repetition(3).dim() == 3);
  CHECK(Alphabet::bpsk().size() == 2);
  Alphabet bad = Alphabet::pam(2);
  bad.prior = {0.5, 0.6};
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad.prior = {};
  bad.symbols[1] = bad.symbols[0];
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("index sampling follows the prior") {
  const auto a = Alphabet::pam4_nonuniform(0.2);
  sampling::Rng rng(1);
  const auto idx = a.sample_indices(100000, rng);
  std::vector<double> freq(4, 0.0);
  for (auto i : idx) freq[i] += 1e-5;
  for (int i = 0; i < 4; ++i) CHECK(freq[static_cast<std::size_t>(i)] == doctest::Approx(a.prior[static_cast<std::size_t>(i)]).epsilon(0.03));
}

TEST_CASE("posterior from discriminator outputs") {
  const auto t = posterior_from_discriminator(vec({1.0 / 3, 2.0 / 3}));
  CHECK(t.raw(0) == doctest::Approx(2.0));
  CHECK(t.raw(1) == doctest::Approx(0.5));
  CHECK(t.normalized(0) == doctest::Approx(0.8));
  CHECK(decode_from_discriminator(vec({1.0 / 3, 2.0 / 3})) == 0);
  CHECK(decode_from_discriminator(vec({0.5, 0.5, 0.4})) == 2);
  CHECK(decode_from_discriminator(vec({0.4, 0.4})) == 0);
}

TEST_CASE("supervised value is maximized at D = 1 / (1 + posterior)") {
  // Expected value over labels with pmf q, per coordinate: log D_i + q_i log(1 - D_i).
  const double q[3] = {0.6, 0.3, 0.1};
  for (double qi : q) {
    double best = -INFINITY, arg = 0;
    for (double d = 1e-4; d < 1; d += 1e-4) {
      const double v = std::log(d) + qi * std::log1p(-d);
      if (v > best) best = v, arg = d;
    }
    CHECK(arg == doctest::Approx(1 / (1 + qi)).epsilon(1e-3));
  }
  MatrixXd d(2, 1);
  d << 0.5, 0.25;
  CHECK(mind_value_supervised(d, {1}) == doctest::Approx(std::log(0.5) + std::log(0.25) + std::log(0.75)));
  CHECK_THROWS_AS(mind_value_supervised(d, {0, 1}), ConfigError);
}

TEST_CASE("entropy estimates") {
  MatrixXd onehot = MatrixXd::Zero(2, 4);
  onehot(0, 0) = onehot(0, 1) = onehot(1, 2) = onehot(1, 3) = 1;
  auto e = estimate_entropies(onehot);
  CHECK(e.h_x_bits == doctest::Approx(1.0));
  CHECK(e.h_x_given_y_bits == 0.0);
  CHECK(e.mi_bits == doctest::Approx(1.0));
  CHECK(e.error_probability == 0.0);
  e = estimate_entropies(MatrixXd::Constant(4, 3, 0.25));
  CHECK(e.h_x_bits == doctest::Approx(2.0));
  CHECK(e.mi_bits == doctest::Approx(0.0).scale(1.0));
  CHECK(e.error_probability == doctest::Approx(0.75));
}

TEST_CASE("unsupervised value with a constant discriminator") {
  const MatrixXd x = MatrixXd::Ones(1, 5), y = MatrixXd::Zero(1, 5);
  auto half = [](const VectorXd&, const VectorXd&) { return 0.5; };
  CHECK(mind_value_unsupervised(half, x, y, x, y, 4.0) == doctest::Approx(5 * std::log(0.5)));
  CHECK_THROWS_AS(mind_value_unsupervised(half, x, y, x, y, 0.0), ConfigError);
}

TEST_CASE("MAP and MaxL oracles") {
  const auto a = Alphabet::pam4_nonuniform(0.05);
  const auto ll = gaussian_loglik(0.5);
  CHECK(maxl_oracle(ll, a, vec({0.9})) == 2);
  CHECK(map_oracle(ll, a, vec({0.9})) == 2);
  // Near an unlikely outer level the prior overrides the likelihood.
  CHECK(maxl_oracle(ll, a, vec({2.1})) == 3);
  CHECK(map_oracle(ll, a, vec({2.1})) == 2);
  // Exact tie at the midpoint.
  CHECK(maxl_oracle(ll, Alphabet::bpsk(), vec({0.0})) == 0);

  Alphabet degenerate = Alphabet::pam(4, {1.0, 0.0, 0.0, 0.0});
  for (double y : {-3.0, 0.0, 3.0, 10.0}) CHECK(map_oracle(ll, degenerate, vec({y})) == 0);

  const VectorXd post = exact_posterior(ll, a, vec({0.3}));
  CHECK(post.sum() == doctest::Approx(1.0).epsilon(1e-14));
  const double w1 = 0.025 * oracle::normal_pdf(0.3, -1, 0.5), w2 = 0.475 * oracle::normal_pdf(0.3, 1, 0.5);
  CHECK(post(1) / post(2) == doctest::Approx(w1 / w2).epsilon(1e-12));
}

TEST_CASE("MaxL under impulsive noise differs from the Gaussian rule") {
  // In one dimension every symmetric unimodal noise gives the nearest-level
  // rule; per-coordinate impulses only change the regions in two dimensions.
  channels::ChannelParams p;
  p.dim = 2;
  p.sigma = 0.3;
  p.middleton_P = 0.3;
  p.middleton_B = 200.0;
  const auto mid = channels::make_channel("middleton", p);
  const auto a = Alphabet::repetition(2);
  const auto mid_ll = [&](const VectorXd& y, const VectorXd& x) { return mid->log_likelihood(y, x); };
  const auto gauss = gaussian_loglik(0.3);
  CHECK(maxl_oracle(mid_ll, Alphabet::pam(4), vec({0.1})) == maxl_oracle(gauss, Alphabet::pam(4), vec({0.1})));
  // One coordinate sits on the +1 symbol, the other is a large excursion.
  const VectorXd y = vec({1.0, -2.5});
  CHECK(maxl_oracle(gauss, a, y) == 0);
  CHECK(maxl_oracle(mid_ll, a, y) == 1);
}

TEST_CASE("genie decoder on a discrete channel matches enumeration") {
  // Binary symmetric channel embedded in reals: outputs 0 and 1, crossover 0.2.
  const auto a = Alphabet::pam(2, {0.7, 0.3});
  const LogLikelihoodFn bsc = [](const VectorXd& y, const VectorXd& x) {
    const bool same = (y(0) > 0.5) == (x(0) > 0);
    return std::log(same ? 0.8 : 0.2);
  };
  // y = 1 favours x = +1 by likelihood 4:1, against a 0.7:0.3 prior.
  CHECK(maxl_oracle(bsc, a, vec({1.0})) == 1);
  CHECK(map_oracle(bsc, a, vec({1.0})) == 1);
  // Error: P(x=-1, y=1) + P(x=+1, y=0) = 0.7*0.2 + 0.3*0.2.
  double err = 0;
  for (int xi = 0; xi < 2; ++xi) {
    for (double y : {0.0, 1.0}) {
      const double py = std::exp(bsc(vec({y}), a.symbols[static_cast<std::size_t>(xi)]));
      if (map_oracle(bsc, a, vec({y})) != static_cast<std::size_t>(xi)) err += a.prior[static_cast<std::size_t>(xi)] * py;
    }
  }
  CHECK(err == doctest::Approx(0.2));
}

TEST_CASE("trained bpsk decoder") {
  channels::ChannelParams p;
  p.sigma = 0.8;
  const auto ch = channels::make_channel("awgn", p);
  DecoderConfig cfg;
  cfg.hidden = {32, 32};
  cfg.batch = 256;
  MindDecoder dec(Alphabet::bpsk(), 1, cfg, 7);
  sampling::Rng rng(8);
  dec.train(*ch, 1500, rng);
  const auto t = dec.posterior(vec({0.0}));
  CHECK(t.normalized(0) == doctest::Approx(0.5).epsilon(0.04));
  CHECK(dec.decode(vec({1.2})) == 1);
  CHECK(dec.decode(vec({-1.2})) == 0);
  sampling::Rng test(9);
  const auto cmp = compare_decoders(dec, *ch, 50000, test);
  // Uniform prior: MAP and MaxL coincide, both at Q(1/sigma).
  CHECK(cmp.ser_map == doctest::Approx(oracle::q_function(1 / 0.8)).epsilon(0.05));
  CHECK(cmp.ser_map <= cmp.ser_maxl);
  CHECK(cmp.ser_mind <= cmp.ser_map * 1.05);
  CHECK(cmp.estimate.h_x_bits == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("compare_decoders requires a likelihood") {
  channels::ChannelParams p;
  const auto ch = channels::make_channel("independent", p);
  MindDecoder dec(Alphabet::bpsk(), 1, DecoderConfig{}, 1);
  sampling::Rng rng(1);
  CHECK_THROWS_AS(compare_decoders(dec, *ch, 10, rng), ConfigError);
}

}  // TEST_SUITE
