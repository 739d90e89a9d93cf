// OpenMP kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>

#include "jcq/dynamics.hpp"
#include "jcq/kernels.hpp"

using namespace jcq;

namespace {

Vector random_state(int n) {
  std::mt19937_64 rng(static_cast<unsigned>(n));
  std::normal_distribution<double> g;
  Vector v(Eigen::Index{1} << n);
  for (auto& x : v) x = cplx(g(rng), g(rng));
  v.normalize();
  return v;
}

Matrix random_density(int n) {
  const Vector v = random_state(n);
  return v * v.adjoint();
}

template <auto Kernel>
void pair_gate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Vector v = random_state(n);
  const Matrix4 g = dynamics::entangling_gate(1.0, 1.0).matrix();
  for (auto _ : state) {
    Kernel(std::span<cplx>(v.data(), static_cast<std::size_t>(v.size())), n, 1, n, g);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * v.size());
}

template <auto Kernel>
void hadamard(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Vector v = random_state(n);
  for (auto _ : state) {
    Kernel(std::span<cplx>(v.data(), static_cast<std::size_t>(v.size())), n);
    benchmark::DoNotOptimize(v.data());
  }
  state.SetItemsProcessed(state.iterations() * v.size());
}

template <auto Kernel>
void dephase(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Matrix rho = random_density(n);
  for (auto _ : state) {
    Kernel(rho, n, 1, 0.999);
    benchmark::DoNotOptimize(rho.data());
  }
  state.SetItemsProcessed(state.iterations() * rho.size());
}

template <auto Kernel>
void conjugate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  Matrix rho = random_density(n);
  const Matrix4 g = dynamics::entangling_gate(1.0, 1.0).matrix();
  for (auto _ : state) {
    Kernel(rho, n, 2, 3, g);
    benchmark::DoNotOptimize(rho.data());
  }
  state.SetItemsProcessed(state.iterations() * rho.size());
}

}  // namespace

BENCHMARK(pair_gate<kernels::reference::apply_pair>)->Name("apply_pair/serial")->DenseRange(10, 20, 2);
BENCHMARK(pair_gate<kernels::apply_pair>)->Name("apply_pair/omp")->DenseRange(10, 20, 2);
BENCHMARK(hadamard<kernels::reference::hadamard_all>)->Name("hadamard_all/serial")->DenseRange(10, 20, 2);
BENCHMARK(hadamard<kernels::hadamard_all>)->Name("hadamard_all/omp")->DenseRange(10, 20, 2);
BENCHMARK(dephase<kernels::reference::dephase>)->Name("dephase/serial")->DenseRange(4, 10, 2);
BENCHMARK(dephase<kernels::dephase>)->Name("dephase/omp")->DenseRange(4, 10, 2);
BENCHMARK(conjugate<kernels::reference::conjugate_pair>)->Name("conjugate_pair/serial")->DenseRange(4, 8, 2);
BENCHMARK(conjugate<kernels::conjugate_pair>)->Name("conjugate_pair/omp")->DenseRange(4, 8, 2);

BENCHMARK_MAIN();
