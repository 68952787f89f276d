#include <benchmark/benchmark.h>

#include <random>

#include "coxcalc/cox_ring.hpp"
#include "coxcalc/fan.hpp"
#include "coxcalc/graded_module.hpp"
#include "coxcalc/linalg.hpp"
#include "coxcalc/morphism.hpp"
#include "coxcalc/sheaf_ops.hpp"

using namespace coxcalc;

namespace {

GradedModule tangent(const GradedRing& r) { return cokernel_module(euler_tangent_map(r)); }

MorphismLift projection(std::int64_t a) {
  return lift_morphism(fans::hirzebruch(a), fans::projective_space(1), LatticeMap{2, 1, IntMatrix{{1, 0}}});
}

void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> entry(-20, 20);
  IntMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = entry(rng);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(a));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16);

void BM_MonomialEnumeration(benchmark::State& state) {
  const GradedRing r = build_cox_ring(fans::hirzebruch(2));
  const std::int64_t k = state.range(0);
  const DegreeVector d = r.class_group.make({k, k});
  for (auto _ : state) benchmark::DoNotOptimize(monomials_of_degree(r, d));
}
BENCHMARK(BM_MonomialEnumeration)->Arg(4)->Arg(16)->Arg(32);

void BM_TangentPiece(benchmark::State& state) {
  const GradedRing r = build_cox_ring(fans::hirzebruch(2));
  const GradedModule p = tangent(r);
  const DegreeVector d = r.class_group.make({state.range(0), 0});
  for (auto _ : state) benchmark::DoNotOptimize(piece(p, d).dimension);
}
BENCHMARK(BM_TangentPiece)->Arg(2)->Arg(8)->Arg(16);

void BM_Pushforward(benchmark::State& state) {
  const std::int64_t a = state.range(0);
  const MorphismLift l = projection(a);
  const GradedModule p = tangent(l.src_ring);
  for (auto _ : state) {
    PushforwardSlice slice = pushforward_slice(p, l, DegreeWindow{{{-a - 2, a + 4}}});
    benchmark::DoNotOptimize(identify_line_bundle_sum(slice).shifts);
  }
}
BENCHMARK(BM_Pushforward)->DenseRange(1, 3);

}  // namespace
BENCHMARK_MAIN();
