#include <doctest.h>

#include <cmath>
#include <sstream>

#include "infocap/errors.hpp"
#include "infocap/nn/activation.hpp"
#include "infocap/nn/adam.hpp"
#include "infocap/nn/gradient_check.hpp"
#include "infocap/nn/mlp.hpp"
#include "infocap/nn/snapshot.hpp"
#include "infocap/sampling/rng.hpp"

using namespace infocap;
using nn::Activation;
using nn::Matrix;

namespace {

Matrix random_matrix(int rows, int cols, std::uint64_t seed) {
  sampling::Rng rng(seed);
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = rng.normal();
  return m;
}

nn::ScalarLoss half_square() {
  return [](const Matrix& out, Matrix* grad) {
    if (grad) *grad = out;
    return 0.5 * out.squaredNorm();
  };
}

}  // namespace

TEST_SUITE("nn") {

TEST_CASE("activations handle extreme arguments") {
  CHECK(nn::softplus(1000.0) == 1000.0);
  CHECK(nn::softplus(-1000.0) >= 0.0);
  CHECK(std::isfinite(nn::softplus(-1000.0)));
  CHECK(nn::softplus(0.0) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  CHECK(nn::log_sigmoid(-1000.0) == doctest::Approx(-1000.0));
  CHECK(nn::log_sigmoid(1000.0) == doctest::Approx(0.0));
  CHECK(nn::sigmoid(0.0) == 0.5);
}

TEST_CASE("activation names round-trip") {
  for (const char* tag : {"relu", "softplus", "sigmoid", "tanh", "identity"}) {
    CHECK(Activation::parse(tag).name() == tag);
  }
  CHECK(Activation::parse("leaky_relu(0.1)").slope == doctest::Approx(0.1));
  CHECK_THROWS_AS(Activation::parse("swish"), ConfigError);
}

TEST_CASE("gradients match central differences for every activation") {
  for (auto act : {Activation::relu(), Activation::leaky_relu(0.2), Activation::softplus(),
                   Activation::sigmoid(), Activation::tanh(), Activation::identity()}) {
    for (std::uint64_t seed : {1u, 2u, 3u}) {
      nn::Mlp net({3, 7, 5, 2}, {act, act, Activation::identity()}, seed);
      // Offset the inputs so relu kinks are unlikely to sit within one step.
      const Matrix in = random_matrix(3, 9, seed + 100).array() + 0.013;
      const auto report = nn::gradient_check(net, in, half_square(), 1e-5);
      CAPTURE(act.name());
      CHECK(report.passed);
    }
  }
}

TEST_CASE("two hidden softplus layers pass the gradient check") {
  nn::Mlp net({4, 8, 8, 1}, {Activation::softplus(), Activation::softplus(), Activation::identity()}, 5);
  const auto report = nn::gradient_check(net, random_matrix(4, 16, 6), half_square(), 1e-5);
  CHECK(report.max_relative_error < 1e-5);
  CHECK(report.parameters_checked == net.parameter_count());
}

TEST_CASE("quadratic loss on a linear network matches to roundoff") {
  nn::Mlp net({3, 2}, {Activation::identity()}, 7);
  const auto report = nn::gradient_check(net, random_matrix(3, 5, 8), half_square(), 1e-7);
  CHECK(report.passed);
}

TEST_CASE("zero tolerance exposes discretization error on a nonlinear net") {
  nn::Mlp net({3, 6, 1}, {Activation::tanh(), Activation::identity()}, 9);
  const auto report = nn::gradient_check(net, random_matrix(3, 5, 10), half_square(), 0.0);
  CHECK_FALSE(report.passed);
}

TEST_CASE("batched forward and backward equal column-wise results") {
  nn::Mlp net({3, 16, 16, 2}, {Activation::relu(), Activation::softplus(), Activation::identity()}, 11);
  const Matrix in = random_matrix(3, 8, 12);
  const Matrix up = random_matrix(2, 8, 13);
  const Matrix out = net.forward(in);
  const auto all = net.backward(up);
  std::vector<double> sum(net.parameter_count(), 0.0);
  for (Eigen::Index c = 0; c < in.cols(); ++c) {
    const Matrix one = net.forward(in.col(c));
    CHECK((one - out.col(c)).cwiseAbs().maxCoeff() <= 1e-12);
    const auto g = nn::Mlp::flatten(net.backward(up.col(c)));
    for (std::size_t k = 0; k < g.size(); ++k) sum[k] += g[k];
  }
  const auto batched = nn::Mlp::flatten(all);
  double worst = 0;
  for (std::size_t k = 0; k < sum.size(); ++k) worst = std::max(worst, std::abs(sum[k] - batched[k]));
  CHECK(worst <= 1e-12);
}

TEST_CASE("input gradient matches finite differences") {
  nn::Mlp net({2, 6, 1}, {Activation::tanh(), Activation::identity()}, 14);
  Matrix in = random_matrix(2, 3, 15);
  net.forward(in);
  const auto g = net.backward(Matrix::Ones(1, 3));
  const double h = 1e-6;
  for (Eigen::Index i = 0; i < in.size(); ++i) {
    Matrix up = in, dn = in;
    up.data()[i] += h;
    dn.data()[i] -= h;
    const double fd = (net.evaluate(up).sum() - net.evaluate(dn).sum()) / (2 * h);
    CHECK(g.input.data()[i] == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("backward without forward is a state error") {
  nn::Mlp net({2, 1}, {Activation::identity()}, 1);
  CHECK_THROWS_AS(net.backward(Matrix::Ones(1, 1)), StateError);
}

TEST_CASE("constructor validation") {
  CHECK_THROWS_AS(nn::Mlp({2}, {}, 1), ConfigError);
  CHECK_THROWS_AS(nn::Mlp({2, 0, 1}, {Activation::relu(), Activation::identity()}, 1), ConfigError);
  CHECK_THROWS_AS(nn::Mlp({2, 3, 1}, {Activation::relu()}, 1), ConfigError);
  nn::Mlp net({2, 1}, {Activation::identity()}, 1);
  CHECK_THROWS_AS(net.forward(Matrix::Ones(3, 1)), ConfigError);
}

TEST_CASE("initialization respects the uniform fan limit") {
  nn::Mlp net({30, 100, 1}, {Activation::relu(), Activation::identity()}, 3);
  const double limit = std::sqrt(6.0 / 130.0);
  CHECK(net.layer(0).weight.cwiseAbs().maxCoeff() <= limit);
  CHECK(net.layer(0).bias.isZero());
}

TEST_CASE("first Adam step moves by the learning rate") {
  // m_hat = g and v_hat = g^2 after one step, so the update is lr g / (|g| + eps).
  nn::Mlp net({1, 1}, {Activation::identity()}, 1);
  net.layer(0).weight(0, 0) = 0;
  net.layer(0).bias(0) = 0;
  auto st = nn::AdamState::for_network(net, {0.1, 0.9, 0.999, 1e-8});
  nn::ParameterGradients g;
  g.weights = {Matrix::Constant(1, 1, 1.0)};
  g.biases = {nn::Vector::Constant(1, 1.0)};
  nn::adam_step(net, g, st);
  CHECK(net.layer(0).weight(0, 0) == doctest::Approx(-0.1 / (1 + 1e-8)).epsilon(1e-14));
  CHECK(st.step_count == 1);
}

TEST_CASE("Adam epsilon changes the step by less than the learning rate") {
  for (double eps : {1e-8, 1e-3, 0.5}) {
    nn::Mlp a({1, 1}, {Activation::identity()}, 1);
    nn::Mlp b = a;
    auto sa = nn::AdamState::for_network(a, {0.1, 0.9, 0.999, 1e-8});
    auto sb = nn::AdamState::for_network(b, {0.1, 0.9, 0.999, eps});
    nn::ParameterGradients g;
    g.weights = {Matrix::Constant(1, 1, 0.3)};
    g.biases = {nn::Vector::Constant(1, -0.2)};
    nn::adam_step(a, g, sa);
    nn::adam_step(b, g, sb);
    CHECK(std::abs(a.layer(0).weight(0, 0) - b.layer(0).weight(0, 0)) < 0.1);
  }
}

TEST_CASE("identical seeds and data give bit-identical training") {
  auto train = [] {
    nn::Mlp net({3, 8, 1}, {Activation::relu(), Activation::identity()}, 21);
    auto st = nn::AdamState::for_network(net);
    for (int t = 0; t < 20; ++t) {
      const Matrix in = random_matrix(3, 16, 100 + t);
      const Matrix& out = net.forward(in);
      nn::adam_step(net, net.backward(out), st);
    }
    return net.flatten();
  };
  CHECK(train() == train());
}

TEST_CASE("snapshots round-trip exactly") {
  nn::Mlp net({3, 5, 2}, {Activation::leaky_relu(0.1), Activation::sigmoid()}, 4);
  std::stringstream ss;
  nn::save_snapshot(net, ss);
  const nn::Mlp back = nn::load_snapshot(ss);
  CHECK(back.flatten() == net.flatten());
  CHECK(back.dims() == net.dims());
  const Matrix in = random_matrix(3, 4, 5);
  CHECK(back.evaluate(in) == net.evaluate(in));

  std::stringstream bad("not a snapshot\n");
  CHECK_THROWS_AS(nn::load_snapshot(bad), ConfigError);
}

}  // TEST_SUITE
