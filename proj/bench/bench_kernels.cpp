/*
   Copyright 2026 The frobsplit Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

// Serial and OpenMP versions of the two hot kernels: sparse polynomial
// multiplication and dense row reduction over F_p.

#include <benchmark/benchmark.h>

#include <random>

#include "frobsplit/fpoly.hpp"
#include "frobsplit/linalg.hpp"
#include "frobsplit/sampling.hpp"

using namespace frobsplit;

namespace {

std::pair<FpPoly, FpPoly> operands(std::int64_t terms) {
    auto ring = make_ring(5, {"x", "y", "z"});
    PolySampler s(ring, 11);
    const auto t = static_cast<std::size_t>(terms);
    return {s.poly(t, 40), s.poly(t, 40)};
}

linalg::FpMatrix random_matrix(std::int64_t n) {
    const auto size = static_cast<std::size_t>(n);
    linalg::FpMatrix m(7, size, size);
    std::mt19937_64 rng(3);
    for (std::size_t r = 0; r < size; ++r)
        for (std::size_t c = 0; c < size; ++c) m.at(r, c) = static_cast<std::uint32_t>(rng() % 7);
    return m;
}

void BM_MulSerial(benchmark::State& state) {
    const auto [a, b] = operands(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(mul_serial(a, b));
}

void BM_MulParallel(benchmark::State& state) {
    const auto [a, b] = operands(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(mul_parallel(a, b));
}

void BM_RrefSerial(benchmark::State& state) {
    const auto m = random_matrix(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(linalg::rref_serial(m));
}

void BM_RrefParallel(benchmark::State& state) {
    const auto m = random_matrix(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(linalg::rref(m));
}

}  // namespace

BENCHMARK(BM_MulSerial)->Arg(50)->Arg(200)->Arg(800);
BENCHMARK(BM_MulParallel)->Arg(50)->Arg(200)->Arg(800);
BENCHMARK(BM_RrefSerial)->Arg(64)->Arg(256)->Arg(512);
BENCHMARK(BM_RrefParallel)->Arg(64)->Arg(256)->Arg(512);

BENCHMARK_MAIN();
