#include "mobius/kernels.hpp"

#include <benchmark/benchmark.h>

#include <random>

namespace {

Eigen::MatrixXd random_columns(Eigen::Index dim, Eigen::Index m, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  Eigen::MatrixXd out(dim, m);
  for (Eigen::Index j = 0; j < m; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) out(i, j) = g(rng);
  return out;
}

// light-ray Gram of random finite points: all off-diagonal entries negative
Eigen::MatrixXd point_gram(Eigen::Index m, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  Eigen::MatrixXd v(4, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double x = u(rng), y = u(rng), s = x * x + y * y;
    v.col(j) << x, y, (s - 1) / 2, (s + 1) / 2;
  }
  return mobius::kernels::serial::gram(v);
}

void BM_gram_serial(benchmark::State& st) {
  const auto a = random_columns(5, st.range(0), 1);
  for (auto _ : st) benchmark::DoNotOptimize(mobius::kernels::serial::gram(a));
}
void BM_gram_parallel(benchmark::State& st) {
  const auto a = random_columns(5, st.range(0), 1);
  for (auto _ : st) benchmark::DoNotOptimize(mobius::kernels::gram(a));
}

void BM_compare_serial(benchmark::State& st) {
  const auto a = random_columns(5, st.range(0), 1);
  const auto b = random_columns(5, st.range(0), 2);
  for (auto _ : st) benchmark::DoNotOptimize(mobius::kernels::serial::compare_grams(a, b));
}
void BM_compare_parallel(benchmark::State& st) {
  const auto a = random_columns(5, st.range(0), 1);
  const auto b = random_columns(5, st.range(0), 2);
  for (auto _ : st) benchmark::DoNotOptimize(mobius::kernels::compare_grams(a, b));
}

void BM_cross_ratio_serial(benchmark::State& st) {
  const auto a = point_gram(st.range(0), 3);
  const auto b = point_gram(st.range(0), 4);
  for (auto _ : st) benchmark::DoNotOptimize(mobius::kernels::serial::cross_ratio_scan(a, b));
}
void BM_cross_ratio_parallel(benchmark::State& st) {
  const auto a = point_gram(st.range(0), 3);
  const auto b = point_gram(st.range(0), 4);
  for (auto _ : st) benchmark::DoNotOptimize(mobius::kernels::cross_ratio_scan(a, b));
}

}  // namespace

BENCHMARK(BM_gram_serial)->Arg(250)->Arg(1000);
BENCHMARK(BM_gram_parallel)->Arg(250)->Arg(1000);
BENCHMARK(BM_compare_serial)->Arg(250)->Arg(1000);
BENCHMARK(BM_compare_parallel)->Arg(250)->Arg(1000);
BENCHMARK(BM_cross_ratio_serial)->Arg(25)->Arg(40);
BENCHMARK(BM_cross_ratio_parallel)->Arg(25)->Arg(40);

BENCHMARK_MAIN();
