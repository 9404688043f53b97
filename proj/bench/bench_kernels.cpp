// Copyright 2026 The catbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "catbox/kernels.hpp"

namespace {

using namespace catbox;

CMatrix random_matrix(std::size_t r, std::size_t c, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n;
  CMatrix m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = cplx(n(rng), n(rng));
  return m;
}

// Two atoms around a field of dimension state.range(0).
kernels::Layout layout(const benchmark::State& state) {
  return kernels::Layout({2, static_cast<std::size_t>(state.range(0)), 2});
}

template <bool Parallel>
void PartialTrace(benchmark::State& state) {
  const auto l = layout(state);
  const CMatrix rho = random_matrix(l.total(), l.total(), 1);
  const std::size_t keep[] = {1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::omp::partial_trace(rho, l, keep)
                                      : kernels::serial::partial_trace(rho, l, keep));
  }
}

template <bool Parallel>
void ReducePure(benchmark::State& state) {
  const auto l = layout(state);
  const CVector psi = random_matrix(l.total(), 1, 2).col(0);
  const std::size_t keep[] = {1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::omp::reduce_pure(psi, l, keep)
                                      : kernels::serial::reduce_pure(psi, l, keep));
  }
}

template <bool Parallel>
void ApplyLocal(benchmark::State& state) {
  const auto l = layout(state);
  const auto d = 2 * static_cast<std::size_t>(state.range(0));
  const CMatrix op = random_matrix(d, d, 3);
  const CMatrix cols = random_matrix(l.total(), 1, 4);
  const std::size_t targets[] = {0, 1};
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::omp::apply_local(op, l, targets, cols)
                                      : kernels::serial::apply_local(op, l, targets, cols));
  }
}

template <bool Parallel>
void Kron(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const CMatrix a = random_matrix(n, n, 5);
  const CMatrix b = random_matrix(4, 4, 6);
  for (auto _ : state) {
    benchmark::DoNotOptimize(Parallel ? kernels::omp::kron(a, b) : kernels::serial::kron(a, b));
  }
}

}  // namespace

BENCHMARK(PartialTrace<false>)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(PartialTrace<true>)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(ReducePure<false>)->Arg(32)->Arg(128)->Arg(512);
BENCHMARK(ReducePure<true>)->Arg(32)->Arg(128)->Arg(512);
BENCHMARK(ApplyLocal<false>)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(ApplyLocal<true>)->Arg(16)->Arg(32)->Arg(64);
BENCHMARK(Kron<false>)->Arg(16)->Arg(64);
BENCHMARK(Kron<true>)->Arg(16)->Arg(64);

BENCHMARK_MAIN();
