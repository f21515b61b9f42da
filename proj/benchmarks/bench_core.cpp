#include <cmath>
#include <numbers>

#include <benchmark/benchmark.h>

#include "sgn/sgn.hpp"

using namespace sgn;

namespace {

constexpr double kPi = std::numbers::pi;

void BM_LengthTorusLine(benchmark::State& state) {
  auto torus = make_flat_torus();
  const Metric g(torus);
  const GammaNet net = torus_line(*torus, {0.1, 0.2}, {3, 4}, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(length(net, g));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LengthTorusLine)->RangeMultiplier(4)->Range(64, 4096)->Complexity(benchmark::oN);

void BM_SolveTorusLoop(benchmark::State& state) {
  auto torus = make_flat_torus();
  const Metric g(torus);
  const GammaNet init =
      param_loop(*torus, [](double t) { return Vec2(t, 0.4 + 0.03 * std::sin(2 * kPi * t)); }, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(solve_stationary(init, g).report.length);
}
BENCHMARK(BM_SolveTorusLoop)->Arg(32)->Arg(64)->Unit(benchmark::kMillisecond);

void BM_SolveTheta(benchmark::State& state) {
  auto torus = make_flat_torus();
  const Metric g = Metric(torus).with_conformal([](const SurfacePoint& p) { return 0.1 * std::cos(2 * kPi * p.x[1]); });
  SolverOptions o;
  o.mode = SolverMode::Critical;
  o.detect_degenerate_family = false;
  const GammaNet init = torus_theta(*torus, 24);
  for (auto _ : state) benchmark::DoNotOptimize(solve_stationary(init, g, o).report.length);
}
BENCHMARK(BM_SolveTheta)->Unit(benchmark::kMillisecond);

void BM_Partition(benchmark::State& state) {
  const Metric g(make_flat_torus());
  const double eps1 = 1.0 / static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(build_partition(g, eps1, 4).size());
}
BENCHMARK(BM_Partition)->Arg(4)->Arg(8)->Unit(benchmark::kMillisecond);

void BM_PsiAll(benchmark::State& state) {
  auto torus = make_flat_torus();
  const BumpSystem bs = build_partition(Metric(torus), 0.3, 4);
  const SurfacePoint p = torus->from_param({0.37, 0.61});
  for (auto _ : state) benchmark::DoNotOptimize(bs.psi_all(p));
}
BENCHMARK(BM_PsiAll);

void BM_MinNormPoint(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Eigen::MatrixXd pts(3, n);
  for (int i = 0; i < n; ++i) {
    const double a = 2 * kPi * i / n;
    pts.col(i) << std::cos(a), std::sin(a), 0.3 * std::cos(3 * a);
  }
  for (auto _ : state) benchmark::DoNotOptimize(min_norm_point(pts).point);
}
BENCHMARK(BM_MinNormPoint)->Arg(8)->Arg(64);

void BM_Rationalize(benchmark::State& state) {
  const int m = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(rationalize_weights({0.3, 0.7}, {1.0, std::sqrt(2.0)}, m).d);
}
BENCHMARK(BM_Rationalize)->Arg(10)->Arg(100);

void BM_MergeTwentyBlocks(benchmark::State& state) {
  std::vector<MergeBlock> blocks;
  for (int m = 1; m <= 20; ++m) blocks.push_back({m, {1.0, 0.5 + 0.1 * m}, {1, 2}});
  for (auto _ : state) benchmark::DoNotOptimize(merge_sequences(blocks).size());
}
BENCHMARK(BM_MergeTwentyBlocks);

}  // namespace

BENCHMARK_MAIN();
