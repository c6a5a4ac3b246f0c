#include <benchmark/benchmark.h>

#include <purefield/action.hpp>
#include <purefield/hypersurface.hpp>
#include <purefield/kinematics.hpp>
#include <purefield/lw_field.hpp>

using namespace purefield;

static void BM_RetardedSolve(benchmark::State& state) {
  const Worldline wl = Worldline::circular(0.5, 0.8);
  const Real4 x{3.0, 1.2, -0.7, 0.4};
  for (auto _ : state) benchmark::DoNotOptimize(retarded_solve(wl, x));
}
BENCHMARK(BM_RetardedSolve);

static void BM_LwField(benchmark::State& state) {
  const SingularityField f(1.0, Worldline::hyperbolic(0.1));
  const Biquaternion x = four_vector(2.0, {0.7, -0.4, 0.5});
  for (auto _ : state) benchmark::DoNotOptimize(f.field(x));
}
BENCHMARK(BM_LwField);

static void BM_TubeSurfaceIntegral(benchmark::State& state) {
  const Worldline wl = Worldline::hyperbolic(0.1);
  const SingularityField f(1.0, wl);
  const SurfacePatch tube = make_tube(wl, 1.0, 0.0, 1.0);
  SurfaceQuadrature q;
  q.n_theta = static_cast<int>(state.range(0));
  q.n_phi = 2 * q.n_theta;
  const SurfaceMap a = lw_potential_on_surface(f);
  const SurfaceMap b = lw_field_on_surface(f);
  for (auto _ : state) benchmark::DoNotOptimize(surface_integral(tube, a, b, q));
}
BENCHMARK(BM_TubeSurfaceIntegral)->Arg(8)->Arg(16)->Arg(24)->Unit(benchmark::kMillisecond);

static void BM_MassTerm(benchmark::State& state) {
  const Worldline wl = Worldline::circular(0.5, 0.8);
  for (auto _ : state) benchmark::DoNotOptimize(mass_term(wl, 1.0, 1.0, 0.0, 1.0));
}
BENCHMARK(BM_MassTerm)->Unit(benchmark::kMillisecond);

static void BM_InteractionTotal(benchmark::State& state) {
  const Worldline wl = Worldline::hyperbolic(0.1);
  const ExternalField ext = ExternalField::plane_wave(0.7, 1e3, {0, 1, 1}, {1, 0, 0}, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(interaction_total(wl, 1.0, ext, 1.0, 0.0, 1.0));
}
BENCHMARK(BM_InteractionTotal)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
