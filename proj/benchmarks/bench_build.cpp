#include <benchmark/benchmark.h>

#include "prockit/compose.hpp"
#include "prockit/expr.hpp"
#include "prockit/models.hpp"
#include "prockit/petri.hpp"
#include "prockit/recspec.hpp"

using namespace prockit;
namespace m = prockit::models;

static void BM_ParallelBuffers(benchmark::State& state) {
  auto l = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(m::two_buffers(l, l, m::bits()).composed.num_states());
}
BENCHMARK(BM_ParallelBuffers)->DenseRange(1, 3);

static void BM_SosAbpSender(benchmark::State& state) {
  auto p = m::abp_sender_expr(m::data(2));
  for (auto _ : state) benchmark::DoNotOptimize(sos_lts(p, {}, 100000).lts.num_states());
}
BENCHMARK(BM_SosAbpSender);

static void BM_DenotationalAbpSender(benchmark::State& state) {
  auto p = m::abp_sender_expr(m::data(2));
  for (auto _ : state) benchmark::DoNotOptimize(eval_denotational(p, {}).num_states());
}
BENCHMARK(BM_DenotationalAbpSender);

static void BM_UnfoldCounter(benchmark::State& state) {
  auto s = m::unbounded_counter_spec();
  auto bound = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(unfold(s, {}, bound).lts.num_states());
}
BENCHMARK(BM_UnfoldCounter)->Range(16, 1024);

static void BM_TokenGameScheduler(benchmark::State& state) {
  Net n = m::scheduler_net(static_cast<unsigned>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(trsy(n, 1000000).lts.num_states());
}
BENCHMARK(BM_TokenGameScheduler)->DenseRange(3, 7, 2);
