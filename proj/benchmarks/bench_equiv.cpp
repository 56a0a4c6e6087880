#include <benchmark/benchmark.h>

#include "prockit/compose.hpp"
#include "prockit/equiv.hpp"
#include "prockit/models.hpp"

using namespace prockit;
namespace m = prockit::models;

static void BM_BranchingAbp(benchmark::State& state) {
  auto d = m::data(static_cast<std::size_t>(state.range(0)));
  Lts hidden = m::abp_hidden(d);
  Lts target = m::abp_target(d);
  for (auto _ : state) benchmark::DoNotOptimize(branching_bisim(hidden, target).equivalent);
  state.counters["states"] = static_cast<double>(hidden.num_states());
}
BENCHMARK(BM_BranchingAbp)->Arg(1)->Arg(2);

static void BM_StrongCounter(benchmark::State& state) {
  auto k = static_cast<unsigned>(state.range(0));
  Lts a = m::counter(k);
  Lts b = seq(m::counter(k), delta());
  for (auto _ : state) benchmark::DoNotOptimize(strong_bisim(a, b).equivalent);
}
BENCHMARK(BM_StrongCounter)->Range(8, 64);

static void BM_BranchingBuffers(benchmark::State& state) {
  auto l = static_cast<unsigned>(state.range(0));
  auto t = m::two_buffers(l, l, m::bits());
  for (auto _ : state) benchmark::DoNotOptimize(branching_bisim(t.hidden, t.target).equivalent);
  state.counters["states"] = static_cast<double>(t.hidden.num_states());
}
BENCHMARK(BM_BranchingBuffers)->DenseRange(1, 3);

static void BM_TraceEqSplit(benchmark::State& state) {
  Lts a = m::split(m::data(static_cast<std::size_t>(state.range(0))));
  Lts b = m::split_like(m::data(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(trace_eq(a, b).equivalent);
}
BENCHMARK(BM_TraceEqSplit)->DenseRange(2, 8, 2);

static void BM_MinimizeBranching(benchmark::State& state) {
  Lts hidden = m::abp_hidden(m::data(2));
  for (auto _ : state) benchmark::DoNotOptimize(minimize(hidden, Reduction::Branching).num_states());
}
BENCHMARK(BM_MinimizeBranching);
