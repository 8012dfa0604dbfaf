#include <benchmark/benchmark.h>

#include "qsteer/ensemble.hpp"
#include "qsteer/protocol_engine.hpp"
#include "qsteer/validation.hpp"

using namespace qsteer;

namespace {

ProtocolParams w_params(int n) {
  ProtocolParams p;
  p.n_qubits = n;
  p.target = WSpec{};
  p.steering_set = SteeringSet::Full12;
  p.max_steps = 200;
  p.record_level = RecordLevel::Summary;
  return p;
}

void BM_EnsembleSerial(benchmark::State& st) {
  const auto p = w_params(3);
  for (auto _ : st) benchmark::DoNotOptimize(run_ensemble_serial(p, 64));
}

void BM_EnsembleParallel(benchmark::State& st) {
  const auto p = w_params(3);
  const int threads = static_cast<int>(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(run_ensemble(p, 64, threads));
}

void BM_ConfigScanKernel(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const ProtocolContext ctx(w_params(n));
  Rng rng = make_stream(1, 0);
  const auto b = bloch_from_state(random_state(n, rng));
  for (auto _ : st) benchmark::DoNotOptimize(evaluate_pair_configs(ctx, b, {1, 2}));
}

void BM_ConfigScanReference(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  const ProtocolContext ctx(w_params(n));
  Rng rng = make_stream(1, 0);
  const auto b = bloch_from_state(random_state(n, rng));
  for (auto _ : st) benchmark::DoNotOptimize(evaluate_pair_configs_reference(ctx, b, {1, 2}));
}

void BM_BlochIncremental(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  Rng rng = make_stream(2, 0);
  const auto psi = random_state(n, rng);
  const auto pc = random_pair_config(n, 0.2, rng, true);
  const auto k = step_operator(psi, pc, {0, 1});
  const auto t = transfer_matrix(k);
  const auto b = bloch_from_state(psi);
  for (auto _ : st) benchmark::DoNotOptimize(apply_pair_transfer(b, pc.n, pc.m, t));
}

void BM_BlochRecompute(benchmark::State& st) {
  const int n = static_cast<int>(st.range(0));
  Rng rng = make_stream(2, 0);
  const auto psi = random_state(n, rng);
  for (auto _ : st) benchmark::DoNotOptimize(bloch_from_state(psi));
}

}  // namespace

BENCHMARK(BM_EnsembleSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_EnsembleParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ConfigScanKernel)->DenseRange(2, 6, 2);
BENCHMARK(BM_ConfigScanReference)->DenseRange(2, 6, 2);
BENCHMARK(BM_BlochIncremental)->DenseRange(2, 6, 2);
BENCHMARK(BM_BlochRecompute)->DenseRange(2, 6, 2);

BENCHMARK_MAIN();
