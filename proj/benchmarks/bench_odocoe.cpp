// Copyright 2026 The odocoe Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include <random>

#include "odocoe/cocycle.hpp"
#include "odocoe/decide.hpp"
#include "odocoe/intmat.hpp"
#include "odocoe/witness.hpp"

using namespace odocoe;

namespace {

SupernaturalList L(std::initializer_list<const char*> xs) {
  SupernaturalList out;
  for (const char* x : xs) out.push_back(parse_sn(x));
  return out;
}

void BM_SmithNormalForm(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> entry(-20, 20);
  std::vector<IntMatrix> mats;
  for (int i = 0; i < 64; ++i) {
    std::vector<mpz_class> e(n * n);
    for (auto& x : e) x = entry(rng);
    mats.emplace_back(n, n, std::move(e));
  }
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(mats[i++ % mats.size()]));
}
BENCHMARK(BM_SmithNormalForm)->DenseRange(2, 8, 2);

void BM_CoeDecide(benchmark::State& state) {
  const auto M = L({"5*2^inf", "3^inf", "7*2^inf*3"});
  const auto N = L({"2^inf", "5*3^inf", "7*2^inf*3"});
  for (auto _ : state) benchmark::DoNotOptimize(coe_decide(M, N));
}
BENCHMARK(BM_CoeDecide);

void BM_ConjDecide(benchmark::State& state) {
  const auto M = L({"2*5^inf", "3*5^inf", "4*5^inf"});
  const auto N = L({"3*5^inf", "4*5^inf", "2*5^inf"});
  for (auto _ : state) benchmark::DoNotOptimize(conj_decide(M, N));
}
BENCHMARK(BM_ConjDecide);

void BM_KInvariant(benchmark::State& state) {
  SupernaturalList M;
  const char* pool[] = {"2^inf", "3*5^inf", "7^inf*2", "11^inf", "13*2^inf", "3^inf*5^2"};
  for (int i = 0; i < state.range(0); ++i) M.push_back(parse_sn(pool[i]));
  for (auto _ : state) benchmark::DoNotOptimize(k_invariant(M));
}
BENCHMARK(BM_KInvariant)->DenseRange(1, 6);

void BM_BuildCoeWitness(benchmark::State& state) {
  const auto M = L({"5*2^inf", "3^inf"});
  const auto N = L({"2^inf", "5*3^inf"});
  const auto d = coe_decide(M, N);
  for (auto _ : state) benchmark::DoNotOptimize(build_coe_witness(M, N, d));
}
BENCHMARK(BM_BuildCoeWitness)->Unit(benchmark::kMillisecond);

void BM_VerifyCoe(benchmark::State& state) {
  const auto M = L({"5*2^inf", "3^inf"});
  const auto N = L({"2^inf", "5*3^inf"});
  const auto w = build_coe_witness(M, N, coe_decide(M, N));
  const auto level = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(verify_coe(w, level, 6));
}
BENCHMARK(BM_VerifyCoe)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_VerifyConj(benchmark::State& state) {
  const auto M = L({"2*3^inf", "3^inf"});
  const auto N = L({"3^inf", "2*3^inf"});
  const auto d = conj_decide(M, N);
  const auto w = build_conj_witness(M, N, d);
  for (auto _ : state) benchmark::DoNotOptimize(verify_conj(w, 3, 4));
}
BENCHMARK(BM_VerifyConj)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
