/*
 * Copyright 2026 The varscale Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "varscale/convergence.hpp"
#include "varscale/convolution.hpp"
#include "varscale/distributions.hpp"
#include "varscale/fitting.hpp"

namespace {

using namespace varscale;

void BM_ConvolveStudent250(benchmark::State& state) {
    const StudentTParams st{0.0, 1.0, 3.0};
    const DensityGrid grid =
        discretize(st, 250, default_tail_sigmas(Family::student_t), {static_cast<std::size_t>(state.range(0))});
    for (auto _ : state) benchmark::DoNotOptimize(convolve_n_fft(grid, 250));
}
BENCHMARK(BM_ConvolveStudent250)->Arg(1 << 14)->Arg(1 << 16)->Unit(benchmark::kMillisecond);

void BM_VgCdfSorted(benchmark::State& state) {
    const VGParams vg{0.0, 1.0, -0.1, 0.5, 1.0};
    std::vector<double> xs(static_cast<std::size_t>(state.range(0)));
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = -6.0 + 12.0 * i / (xs.size() - 1);
    for (auto _ : state) benchmark::DoNotOptimize(cumulative_sorted(vg, xs));
}
BENCHMARK(BM_VgCdfSorted)->Arg(500)->Arg(5000)->Unit(benchmark::kMillisecond);

void BM_FitStudent(benchmark::State& state) {
    std::mt19937_64 rng(1);
    std::student_t_distribution<double> t(3.0);
    std::vector<double> draws(static_cast<std::size_t>(state.range(0)));
    for (double& d : draws) d = t(rng);
    const EmpiricalSample sample(draws);
    for (auto _ : state) benchmark::DoNotOptimize(fit_cdf_mse(sample, Family::student_t));
}
BENCHMARK(BM_FitStudent)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_FitVarianceGamma(benchmark::State& state) {
    std::mt19937_64 rng(2);
    std::student_t_distribution<double> t(3.0);
    std::vector<double> draws(static_cast<std::size_t>(state.range(0)));
    for (double& d : draws) d = t(rng);
    const EmpiricalSample sample(draws);
    for (auto _ : state) benchmark::DoNotOptimize(fit_cdf_mse(sample, Family::variance_gamma));
}
BENCHMARK(BM_FitVarianceGamma)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_CriticalNu(benchmark::State& state) {
    for (auto _ : state) benchmark::DoNotOptimize(critical_nu(7e-4, 250.0));
}
BENCHMARK(BM_CriticalNu);

}  // namespace

BENCHMARK_MAIN();
