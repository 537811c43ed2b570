#include <benchmark/benchmark.h>

#include <cmath>

#include "backflow/kernels.hpp"
#include "backflow/kernelspec.hpp"
#include "backflow/parallel.hpp"

using namespace backflow;

namespace {

QuadratureGrid grid(int n) { return kernelspec::build_grid(n, 15.0); }

std::vector<double> amplitude(const QuadratureGrid& g) {
  std::vector<double> f(g.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = g.weights[i] * std::sin(g.nodes[i] * g.nodes[i]) / (1.0 + g.nodes[i]);
  return f;
}

void BM_kernel_serial(benchmark::State& st) {
  const auto g = grid(static_cast<int>(st.range(0)));
  Eigen::MatrixXd m;
  for (auto _ : st) {
    kernels::assemble_flux_kernel_serial(g, 0.5, m);
    benchmark::DoNotOptimize(m.data());
  }
}
void BM_kernel_omp(benchmark::State& st) {
  const auto g = grid(static_cast<int>(st.range(0)));
  Eigen::MatrixXd m;
  for (auto _ : st) {
    kernels::assemble_flux_kernel(g, 0.5, m);
    benchmark::DoNotOptimize(m.data());
  }
}

void BM_window_serial(benchmark::State& st) {
  const auto g = grid(static_cast<int>(st.range(0)));
  const auto f = amplitude(g);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::time_window_form_serial(g.nodes, f, 0.7));
}
void BM_window_omp(benchmark::State& st) {
  const auto g = grid(static_cast<int>(st.range(0)));
  const auto f = amplitude(g);
  for (auto _ : st) benchmark::DoNotOptimize(kernels::time_window_form(g.nodes, f, 0.7));
}

std::vector<double> xs() {
  std::vector<double> x(4000);
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = -100.0 + 0.05 * static_cast<double>(k);
  return x;
}
void BM_transform_serial(benchmark::State& st) {
  const auto g = grid(static_cast<int>(st.range(0)));
  const auto f = amplitude(g);
  const auto x = xs();
  std::vector<std::complex<double>> psi;
  for (auto _ : st) {
    kernels::momentum_to_position_serial(g.nodes, f, x, 0.5, psi);
    benchmark::DoNotOptimize(psi.data());
  }
}
void BM_transform_omp(benchmark::State& st) {
  const auto g = grid(static_cast<int>(st.range(0)));
  const auto f = amplitude(g);
  const auto x = xs();
  std::vector<std::complex<double>> psi;
  for (auto _ : st) {
    kernels::momentum_to_position(g.nodes, f, x, 0.5, psi);
    benchmark::DoNotOptimize(psi.data());
  }
}

std::vector<double> ts() {
  std::vector<double> t(2000);
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = -3.0 + 0.003 * static_cast<double>(k);
  return t;
}
void BM_current_serial(benchmark::State& st) {
  const auto g = grid(static_cast<int>(st.range(0)));
  const auto f = amplitude(g);
  const auto t = ts();
  std::vector<double> j;
  for (auto _ : st) {
    kernels::grid_current_serial(g.nodes, f, t, j);
    benchmark::DoNotOptimize(j.data());
  }
}
void BM_current_omp(benchmark::State& st) {
  const auto g = grid(static_cast<int>(st.range(0)));
  const auto f = amplitude(g);
  const auto t = ts();
  std::vector<double> j;
  for (auto _ : st) {
    kernels::grid_current(g.nodes, f, t, j);
    benchmark::DoNotOptimize(j.data());
  }
}

}  // namespace

BENCHMARK(BM_kernel_serial)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_kernel_omp)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_window_serial)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_window_omp)->Arg(400)->Arg(800)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_transform_serial)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_transform_omp)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_current_serial)->Arg(400)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_current_omp)->Arg(400)->Unit(benchmark::kMillisecond);

int main(int argc, char** argv) {
  apply_thread_limit();
  benchmark::Initialize(&argc, argv);
  if (benchmark::ReportUnrecognizedArguments(argc, argv)) return 1;
  benchmark::RunSpecifiedBenchmarks();
  benchmark::Shutdown();
  return 0;
}
