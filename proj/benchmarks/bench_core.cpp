#include <benchmark/benchmark.h>

#include "structcorr/estimators.hpp"
#include "structcorr/scan.hpp"
#include "structcorr/simulation.hpp"
#include "structcorr/spectral.hpp"

namespace {

using structcorr::GenotypeMatrix;
using structcorr::Method;
using structcorr::Scenario;

GenotypeMatrix make_design(int n, int p) {
  return structcorr::gen_design(Scenario::independent, n, p, {}, 42);
}

void BM_ThinSvd(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int p = static_cast<int>(state.range(1));
  const GenotypeMatrix x = make_design(n, p);
  for (auto _ : state) {
    benchmark::DoNotOptimize(structcorr::thin_svd(x.values));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_ThinSvd)
    ->Args({200, 50})
    ->Args({500, 100})
    ->Args({1000, 200})
    ->Unit(benchmark::kMillisecond);

void BM_FitSweep(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const GenotypeMatrix x = make_design(500, 100);
  const Eigen::VectorXd beta = structcorr::gen_beta(100, 10, 7);
  const Eigen::VectorXd y = structcorr::simulate_response(
      x, structcorr::to_design_units(x, beta), 1.0, 11);
  const structcorr::SpectralBasis basis =
      structcorr::method_basis(x, Method::cpc, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(structcorr::fit(x, y, Method::cpc, 0, k, basis));
  }
}
BENCHMARK(BM_FitSweep)->Arg(1)->Arg(5)->Arg(10)->Arg(20)->Arg(40)
    ->Unit(benchmark::kMicrosecond);

void BM_Moments(benchmark::State& state) {
  const int k = static_cast<int>(state.range(0));
  const GenotypeMatrix x = make_design(500, 100);
  const Eigen::VectorXd beta = structcorr::to_design_units(
      x, structcorr::gen_beta(100, 10, 7));
  const structcorr::SpectralBasis basis =
      structcorr::method_basis(x, Method::cpc, 0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        structcorr::cpc_moments(x, beta, 0, k, 1.0, basis));
  }
}
BENCHMARK(BM_Moments)->Arg(5)->Arg(20)->Unit(benchmark::kMicrosecond);

void BM_ScanAll(benchmark::State& state) {
  const int p = static_cast<int>(state.range(0));
  const GenotypeMatrix x = make_design(200, p);
  const Eigen::VectorXd beta = structcorr::gen_beta(p, 5, 7);
  const Eigen::VectorXd y = structcorr::simulate_response(
      x, structcorr::to_design_units(x, beta), 1.0, 11);
  for (auto _ : state) {
    benchmark::DoNotOptimize(structcorr::scan_all(x, y, 10, 1));
  }
}
BENCHMARK(BM_ScanAll)->Arg(20)->Arg(50)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
