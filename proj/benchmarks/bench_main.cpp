#include <benchmark/benchmark.h>

#include <vector>

#include "addcomb/conv.hpp"
#include "addcomb/energy.hpp"
#include "addcomb/forge.hpp"
#include "addcomb/group.hpp"
#include "addcomb/incidence.hpp"

namespace {

using namespace addcomb;

GSet dense_random(const GroupCtx& ctx, std::int64_t n, double q, std::uint64_t seed) {
  FamilySpec spec;
  spec.family = Family::RandomInterval;
  spec.n = n;
  spec.probability = q;
  spec.seed = seed;
  return generate(spec, ctx);
}

void BM_ConvolveCyclic(benchmark::State& state) {
  const Elem p = 65537;
  const auto ctx = GroupCtx::residues(p);
  const auto f = CountFn::indicator(dense_random(ctx, p - 1, 0.5, 1));
  const auto g = CountFn::indicator(dense_random(ctx, p - 1, 0.5, 2));
  const auto path = static_cast<ConvPath>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(convolve(f, g, Sign::Plus, path));
}
BENCHMARK(BM_ConvolveCyclic)->Arg(static_cast<int>(ConvPath::Fast))->Unit(benchmark::kMillisecond);

void BM_ConvolvePaths(benchmark::State& state) {
  const auto ctx = GroupCtx::integers();
  const auto a = CountFn::indicator(dense_random(ctx, state.range(0), 0.5, 3));
  const auto path = static_cast<ConvPath>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(convolve(a, a, Sign::Minus, path));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ConvolvePaths)
    ->ArgsProduct({{256, 1024, 4096}, {static_cast<int>(ConvPath::Naive), static_cast<int>(ConvPath::Fast)}})
    ->Unit(benchmark::kMicrosecond);

void BM_Sumset(benchmark::State& state) {
  const auto ctx = GroupCtx::residues(1000003);
  Rng rng(5, "bench/sumset");
  std::vector<Elem> xs;
  for (std::int64_t i = 0; i < state.range(0); ++i) xs.push_back(static_cast<Elem>(rng.uniform(1000003)));
  const GSet a(ctx, xs);
  const auto path = static_cast<SetPath>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(sumset(a, a, path));
}
BENCHMARK(BM_Sumset)
    ->ArgsProduct({{128, 1024}, {static_cast<int>(SetPath::List), static_cast<int>(SetPath::Bitmap)}})
    ->Unit(benchmark::kMicrosecond);

void BM_FourthEnergy(benchmark::State& state) {
  const auto a = dense_random(GroupCtx::residues(4099), state.range(0), 0.5, 6);
  for (auto _ : state) benchmark::DoNotOptimize(fourth_energy(a));
}
BENCHMARK(BM_FourthEnergy)->Arg(512)->Arg(4098)->Unit(benchmark::kMicrosecond);

void BM_QuadIdentity(benchmark::State& state) {
  const auto a = dense_random(GroupCtx::integers(), 2 * state.range(0), 0.5, 7);
  for (auto _ : state) benchmark::DoNotOptimize(quad_identity(a));
}
BENCHMARK(BM_QuadIdentity)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_Incidences(benchmark::State& state) {
  const auto ctx = GroupCtx::residues(1009);
  FamilySpec spec;
  spec.family = Family::MultSubgroup;
  spec.order = state.range(0);
  const GSet a = generate(spec, ctx);
  const GSet aa = prodset(a, a);
  const LineSet lines = LineSet::from_pairs(a, a);
  const auto path = static_cast<IncidencePath>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(count_incidences(a, aa, lines, path));
}
BENCHMARK(BM_Incidences)
    ->ArgsProduct({{7, 48}, {static_cast<int>(IncidencePath::Fast), static_cast<int>(IncidencePath::Oracle)}})
    ->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
