#include <benchmark/benchmark.h>

#include "infocap/channels/scenario.hpp"
#include "infocap/cortical/learner.hpp"
#include "infocap/estimators/estimator.hpp"
#include "infocap/nn/mlp.hpp"
#include "infocap/sampling/batch.hpp"
#include "infocap/sampling/shuffle.hpp"

using namespace infocap;

namespace {

nn::Mlp critic(int in) {
  const auto relu = nn::Activation::relu();
  return nn::Mlp({in, 256, 256, 1}, {relu, relu, nn::Activation::identity()}, 1);
}

// Columns = 2N for the deranged critic (joint plus marginal pairs).
void BM_MlpForward(benchmark::State& state) {
  auto net = critic(10);
  const Eigen::MatrixXd x = Eigen::MatrixXd::Random(10, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(net.forward(x).data());
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MlpForward)->Arg(128)->Arg(256)->Arg(4096);

void BM_MlpForwardBackward(benchmark::State& state) {
  auto net = critic(10);
  const Eigen::MatrixXd x = Eigen::MatrixXd::Random(10, state.range(0));
  const Eigen::MatrixXd up = Eigen::MatrixXd::Ones(1, state.range(0));
  for (auto _ : state) {
    net.forward(x);
    benchmark::DoNotOptimize(net.backward(up).weights.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_MlpForwardBackward)->Arg(128)->Arg(256)->Arg(4096);

void BM_EstimatorStep(benchmark::State& state, const char* family, int d, std::size_t n) {
  estimators::EstimatorConfig cfg;
  cfg.family = estimators::Family::parse(family);
  estimators::MiEstimator est(d, d, cfg, 1);
  sampling::Rng rng(2);
  const double rho = 0.5;
  for (auto _ : state) {
    const auto b = sampling::gaussian_pair_batch(d, rho, n, rng);
    benchmark::DoNotOptimize(est.train_step(b, est.make_shuffle(n, rng)).value);
  }
}
BENCHMARK_CAPTURE(BM_EstimatorStep, gan_dime_d5_n64, "gan_dime", 5, 64);
BENCHMARK_CAPTURE(BM_EstimatorStep, kl_dime_d20_n128, "kl_dime", 20, 128);
BENCHMARK_CAPTURE(BM_EstimatorStep, cpc_d5_n64, "cpc", 5, 64)->Unit(benchmark::kMillisecond);

void BM_Derangement(benchmark::State& state, sampling::DerangementMode mode) {
  sampling::Rng rng(3);
  for (auto _ : state) benchmark::DoNotOptimize(sampling::derange(static_cast<std::size_t>(state.range(0)), mode, rng).perm.data());
}
BENCHMARK_CAPTURE(BM_Derangement, random, sampling::DerangementMode::random)->Arg(64)->Arg(1024);
BENCHMARK_CAPTURE(BM_Derangement, shift, sampling::DerangementMode::shift)->Arg(64)->Arg(1024);

void BM_CorticalIteration(benchmark::State& state) {
  channels::ChannelParams p;
  cortical::LearnerConfig cfg;
  cfg.constraint.peak_A = 1.5;
  cfg.constraint.peak_mode = cortical::PeakMode::hard;
  cortical::CapacityLearner learner(channels::make_channel("awgn", p), cfg, 4);
  sampling::Rng rng(5);
  for (auto _ : state) benchmark::DoNotOptimize(learner.train(1, rng).back().value);
}
BENCHMARK(BM_CorticalIteration)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
