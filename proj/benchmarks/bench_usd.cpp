#include <benchmark/benchmark.h>

#include <cmath>

#include "usd/phase_bound.hpp"
#include "usd/schmidt.hpp"
#include "usd/solver.hpp"
#include "usd/state_set.hpp"

namespace {

usd::StateSet example1() {
  const double r3 = 1.0 / std::sqrt(3.0);
  Eigen::MatrixXcd m(3, 3);
  m.col(0) << 1, 0, 0;
  m.col(1) << r3, r3, r3;
  m.col(2) << r3, r3, -r3;
  return usd::StateSet(m, Eigen::VectorXd::Constant(3, 1.0 / 3.0));
}

usd::StateSet four_state_gu() {
  Eigen::Vector4d psi(2, 2, 1, 3);
  psi /= 3.0 * std::sqrt(2.0);
  const Eigen::Vector4d u2(1, -1, 1, -1);
  const Eigen::Vector4d u3(1, 1, -1, -1);
  Eigen::MatrixXcd m(4, 4);
  m.col(0) = psi.cast<std::complex<double>>();
  m.col(1) = (u2.array() * psi.array()).matrix().cast<std::complex<double>>();
  m.col(2) = (u3.array() * psi.array()).matrix().cast<std::complex<double>>();
  m.col(3) = (u2.array() * u3.array() * psi.array()).matrix().cast<std::complex<double>>();
  return usd::StateSet(m, Eigen::VectorXd::Constant(4, 0.25));
}

void BM_Gram(benchmark::State& state) {
  const usd::StateSet set = four_state_gu();
  for (auto _ : state) benchmark::DoNotOptimize(usd::gram(set));
}
BENCHMARK(BM_Gram);

void BM_Objective(benchmark::State& state) {
  const usd::StateSet set = four_state_gu();
  const usd::GramData g = usd::gram(set);
  const usd::PhaseVector theta({0.0, 0.3, 1.1, 2.7});
  for (auto _ : state)
    benchmark::DoNotOptimize(usd::objective(g, set.priors(), theta));
}
BENCHMARK(BM_Objective);

void BM_SigmaMin(benchmark::State& state) {
  const usd::StateSet set = four_state_gu();
  const usd::GramData g = usd::gram(set);
  const Eigen::VectorXd gamma = Eigen::VectorXd::Constant(4, 0.1);
  for (auto _ : state) benchmark::DoNotOptimize(usd::sigma_min(g, gamma));
}
BENCHMARK(BM_SigmaMin);

void BM_MinimizeBound3(benchmark::State& state) {
  const usd::StateSet set = example1();
  for (auto _ : state) benchmark::DoNotOptimize(usd::minimize_bound(set));
}
BENCHMARK(BM_MinimizeBound3)->Unit(benchmark::kMillisecond);

void BM_MinimizeBound4(benchmark::State& state) {
  const usd::StateSet set = four_state_gu();
  for (auto _ : state) benchmark::DoNotOptimize(usd::minimize_bound(set));
}
BENCHMARK(BM_MinimizeBound4)->Unit(benchmark::kMillisecond);

void BM_SolveOptimal3(benchmark::State& state) {
  const usd::StateSet set = example1();
  for (auto _ : state) benchmark::DoNotOptimize(usd::solve_optimal(set));
}
BENCHMARK(BM_SolveOptimal3)->Unit(benchmark::kMillisecond);

void BM_EtaFamily(benchmark::State& state) {
  const usd::StateSet set = four_state_gu();
  const usd::PhaseVector theta({0.0, 0.3, 1.1, 2.7});
  for (auto _ : state) benchmark::DoNotOptimize(usd::eta_family(set, theta));
}
BENCHMARK(BM_EtaFamily);

void BM_Oracle20(benchmark::State& state) {
  const usd::StateSet set = example1();
  for (auto _ : state) benchmark::DoNotOptimize(usd::brute_force_oracle(set, 20));
}
BENCHMARK(BM_Oracle20)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
