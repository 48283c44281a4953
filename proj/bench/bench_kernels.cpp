// Serial reference against the OpenMP driver for the sampling kernels.

#include "polarfaces/faceorbit.hpp"
#include "polarfaces/gradmap.hpp"

#include <benchmark/benchmark.h>

using namespace polar;

namespace {

ExecPolicy policy_of(const benchmark::State& st) { return st.range(0) ? ExecPolicy::parallel : ExecPolicy::serial; }

void BM_Kostant(benchmark::State& st) {
  const auto model = MatrixModel::make("sym4");
  const Mat x = model.sample_p(11);
  for (auto _ : st) benchmark::DoNotOptimize(kostant_check(model, x, 10000, 5, 1e-9, policy_of(st)).max_violation);
  st.SetItemsProcessed(st.iterations() * 10000);
}

void BM_ExposedStadium(benchmark::State& st) {
  const auto model = MatrixModel::make("a1xa1");
  const auto rs = RootSystem::build("A1xA1");
  RVec l{Rational(-1), Rational(0)}, r{Rational(1), Rational(0)};
  const Body body = DiskHull2D({}, {{l, 1}, {r, 1}});
  for (auto _ : st) benchmark::DoNotOptimize(exposed_equivalence_check(rs, model, body, 2000, 3, 1e-9, policy_of(st)).passed);
}

void BM_FaceSet(benchmark::State& st) {
  const ProjectiveModel m(4);
  const RVec beta{Rational(1), Rational(1), Rational(-1), Rational(-1)};
  for (auto _ : st) benchmark::DoNotOptimize(face_set_check(m, beta, 10000, 2, 1e-9, policy_of(st)).max_excess);
}

void BM_Retraction(benchmark::State& st) {
  const ProjectiveModel m(4);
  const RVec b{Rational(3), Rational(-1), Rational(-1), Rational(-1)};
  const RVec b2{Rational(6), Rational(-2), Rational(-2), Rational(-2)};
  for (auto _ : st) benchmark::DoNotOptimize(retraction_check(m, {0}, {b, b2}, 1000, 4, 1e-8, policy_of(st)).passed);
}

}  // namespace

BENCHMARK(BM_Kostant)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ExposedStadium)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_FaceSet)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Retraction)->ArgName("parallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
