// Serial reference kernels against their OpenMP versions, plus the frame
// transforms and one ADMM iteration per variant family.

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "admm/frames.hpp"
#include "admm/kernels.hpp"
#include "admm/pipeline.hpp"
#include "admm/solvers.hpp"

namespace k = admm::kernels;

namespace {

std::vector<double> random_values(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v) x = d(rng);
  return v;
}

template <bool Parallel>
void BM_VectorSoft(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = random_values(static_cast<std::size_t>(n) * n, 1);
  const auto b = random_values(static_cast<std::size_t>(n) * n, 2);
  std::vector<double> oh(a.size()), ov(a.size());
  for (auto _ : state) {
    if constexpr (Parallel) {
      k::omp::vector_soft(a, b, 0.3, oh, ov);
    } else {
      k::serial::vector_soft(a, b, 0.3, oh, ov);
    }
    benchmark::DoNotOptimize(oh.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(a.size()));
}

template <bool Parallel>
void BM_Differences(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto x = random_values(static_cast<std::size_t>(n) * n, 3);
  std::vector<double> gh(x.size()), gv(x.size()), back(x.size());
  for (auto _ : state) {
    if constexpr (Parallel) {
      k::omp::diff_h(x, n, n, gh);
      k::omp::diff_v(x, n, n, gv);
      k::omp::diff_h_adjoint(gh, n, n, back);
    } else {
      k::serial::diff_h(x, n, n, gh);
      k::serial::diff_v(x, n, n, gv);
      k::serial::diff_h_adjoint(gh, n, n, back);
    }
    benchmark::DoNotOptimize(back.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(x.size()));
}

template <bool Parallel>
void BM_MaskedProx(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto v = random_values(static_cast<std::size_t>(n) * n, 4);
  const auto y = random_values(v.size(), 5);
  std::vector<double> w(v.size(), 1.0), out(v.size());
  for (std::size_t i = 0; i < w.size(); i += 5) w[i] = 0.0;
  for (auto _ : state) {
    if constexpr (Parallel) {
      k::omp::masked_prox(v, y, w, 0.5, out);
    } else {
      k::serial::masked_prox(v, y, w, 0.5, out);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(v.size()));
}

template <bool Parallel>
void BM_SumNorm2(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto a = random_values(static_cast<std::size_t>(n) * n, 6);
  const auto b = random_values(a.size(), 7);
  for (auto _ : state) {
    double s = Parallel ? k::omp::sum_norm2(a, b) : k::serial::sum_norm2(a, b);
    benchmark::DoNotOptimize(s);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(a.size()));
}

template <bool Parallel>
void BM_HaarAnalysis(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const admm::ImageGrid x(n, n, random_values(static_cast<std::size_t>(n) * n, 8));
  for (auto _ : state) {
    admm::CoeffStack z = Parallel ? admm::analyze(x) : admm::analyze_reference(x);
    benchmark::DoNotOptimize(z.bands.data());
  }
}

template <bool Parallel>
void BM_HaarSynthesis(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const admm::CoeffStack z = admm::analyze(admm::ImageGrid(n, n, random_values(static_cast<std::size_t>(n) * n, 9)));
  for (auto _ : state) {
    admm::ImageGrid x = Parallel ? admm::synthesize(z) : admm::synthesize_reference(z);
    benchmark::DoNotOptimize(x.values().data());
  }
}

void BM_AdmmIteration(benchmark::State& state) {
  const auto variant = static_cast<admm::Variant>(state.range(0));
  const int n = static_cast<int>(state.range(1));
  const admm::Kernel kernel = admm::make_kernel(admm::KernelKind::uniform, 4);
  const admm::Degraded d = admm::degrade(admm::make_test_scene(n, n, 3), {kernel, 40.0, 0.0, 1});
  admm::AdmmConfig cfg;
  cfg.variant = variant;
  cfg.lambda = 0.01;
  admm::AdmmSolver solver(d.y, kernel, d.mask, cfg);
  for (auto _ : state) benchmark::DoNotOptimize(solver.iterate());
  state.SetLabel(std::string(admm::to_string(variant)));
}

}  // namespace

BENCHMARK(BM_VectorSoft<false>)->Arg(256)->Arg(1024);
BENCHMARK(BM_VectorSoft<true>)->Arg(256)->Arg(1024);
BENCHMARK(BM_Differences<false>)->Arg(256)->Arg(1024);
BENCHMARK(BM_Differences<true>)->Arg(256)->Arg(1024);
BENCHMARK(BM_MaskedProx<false>)->Arg(256)->Arg(1024);
BENCHMARK(BM_MaskedProx<true>)->Arg(256)->Arg(1024);
BENCHMARK(BM_SumNorm2<false>)->Arg(256)->Arg(1024);
BENCHMARK(BM_SumNorm2<true>)->Arg(256)->Arg(1024);
BENCHMARK(BM_HaarAnalysis<false>)->Arg(256);
BENCHMARK(BM_HaarAnalysis<true>)->Arg(256);
BENCHMARK(BM_HaarSynthesis<false>)->Arg(256);
BENCHMARK(BM_HaarSynthesis<true>)->Arg(256);
BENCHMARK(BM_AdmmIteration)
    ->ArgsProduct({{static_cast<long>(admm::Variant::tv_md), static_cast<long>(admm::Variant::tv_cg),
                    static_cast<long>(admm::Variant::fa_md), static_cast<long>(admm::Variant::fa_cg)},
                   {256}})
    ->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
