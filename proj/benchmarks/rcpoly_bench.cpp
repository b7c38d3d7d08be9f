#include <benchmark/benchmark.h>

#include "rcpoly/constraints.hpp"
#include "rcpoly/games.hpp"
#include "rcpoly/lp.hpp"
#include "rcpoly/polytope.hpp"
#include "rcpoly/symmetry.hpp"

using namespace rcpoly;

namespace {

const Scenario s322 = Scenario::uniform(3, 2, 2);

void BM_RcRows(benchmark::State& state) {
  auto fig1 = structure_preset("fig1");
  for (auto _ : state) benchmark::DoNotOptimize(rc_rows(s322, fig1));
}
BENCHMARK(BM_RcRows);

void BM_Rank(benchmark::State& state) {
  auto sys = rc_rows(Scenario::uniform(3, static_cast<int>(state.range(0)), 2), structure_preset("fig1"));
  for (auto _ : state) benchmark::DoNotOptimize(rank(sys));
}
BENCHMARK(BM_Rank)->Arg(2)->Arg(3);

void BM_GameLp(benchmark::State& state) {
  auto sys = rc_rows(s322, structure_preset("fig1"));
  auto g = gwa();
  for (auto _ : state) benchmark::DoNotOptimize(maximize({g.coefficients, sys}));
}
BENCHMARK(BM_GameLp)->Unit(benchmark::kMillisecond);

void BM_DoubleDescription(benchmark::State& state) {
  auto sys = ns_rows(Scenario::uniform(2, static_cast<int>(state.range(0)), 2));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_vertices(sys));
}
BENCHMARK(BM_DoubleDescription)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_OrbitEnumeration(benchmark::State& state) {
  auto s = Scenario::uniform(2, static_cast<int>(state.range(0)), 2);
  auto sys = ns_rows(s);
  auto g = make_group(s, SignalingStructure(2));
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_vertices_by_orbits(sys, g));
}
BENCHMARK(BM_OrbitEnumeration)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_CanonicalForm(benchmark::State& state) {
  auto g = make_group(s322, structure_preset("fig1"));
  auto box = gwa_box().entries;
  VertexSet vs(s322);
  vs.add(box, VertexTag::RC);
  auto nums = vs.numerators(0);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(nums, g));
}
BENCHMARK(BM_CanonicalForm);

void BM_ClassicalValue(benchmark::State& state) {
  auto g = gwa();
  for (auto _ : state) benchmark::DoNotOptimize(classical_value(g));
}
BENCHMARK(BM_ClassicalValue);

}  // namespace

BENCHMARK_MAIN();
