// SPDX-License-Identifier: Apache-2.0
//
// uavpdc - pilot decontamination for massive MIMO networks with UAVs
// Copyright (C) 2026 The uavpdc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "uavpdc/detector.hpp"
#include "uavpdc/pdc.hpp"
#include "uavpdc/simulation.hpp"

#include <benchmark/benchmark.h>

using namespace uavpdc;

namespace
{
    ArrayGeometry reference_array(arma::uword M)
    {
        return ArrayGeometry::half_wavelength(M, speed_of_light / 2e9);
    }

    void spectrum(benchmark::State &state, SpectrumRoute route)
    {
        const arma::uword M = (arma::uword)state.range(0);
        const MatchedFilterBank bank(reference_array(M), AngularGrid{64, 2 * M}, route);
        Rng rng = substream(1, 0);
        const ChannelVector x = complex_normal_vector(rng, M, 1.0);
        for (auto _ : state)
            benchmark::DoNotOptimize(matched_filter_spectrum(x, bank));
    }

    void BM_SpectrumDirect(benchmark::State &state) { spectrum(state, SpectrumRoute::Direct); }
    void BM_SpectrumFft(benchmark::State &state) { spectrum(state, SpectrumRoute::Fft); }

    void BM_SuccessiveDetection(benchmark::State &state)
    {
        const MatchedFilterBank bank(reference_array(128), AngularGrid{64, 256});
        Rng rng = substream(2, 0);
        ChannelVector x = complex_normal_vector(rng, 128, 0.05);
        x += bank.steering(40, 10) + 0.8 * bank.steering(20, 150);
        const DetectorConfig config{3.0, (std::size_t)state.range(0)};
        for (auto _ : state)
            benchmark::DoNotOptimize(successive_detection(x, bank, config));
    }

    void BM_GeniePdc(benchmark::State &state)
    {
        const ArrayGeometry a = reference_array(128);
        Rng rng = substream(3, 0);
        const ChannelVector x = complex_normal_vector(rng, 128, 1.0);
        std::vector<Aoa> aoas;
        for (int k = 0; k < state.range(0); ++k)
            aoas.push_back({uniform(rng, 0.0, 1.5), uniform(rng, -3.1, 3.1)});
        for (auto _ : state)
            benchmark::DoNotOptimize(perfect_pdc(x, aoas, a));
    }

    void BM_ReferenceTrial(benchmark::State &state)
    {
        ScenarioConfig c = reference_scenario();
        c.num_uavs = (int)state.range(0);
        const ScenarioContext ctx = make_context(c);
        std::uint64_t t = 0;
        for (auto _ : state)
            benchmark::DoNotOptimize(evaluate_trial(ctx, realize_trial(ctx, t++)));
    }
} // namespace

BENCHMARK(BM_SpectrumDirect)->Arg(32)->Arg(128)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SpectrumFft)->Arg(32)->Arg(128)->Arg(512)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_SuccessiveDetection)->Arg(2)->Arg(18)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_GeniePdc)->Arg(2)->Arg(8)->Unit(benchmark::kMicrosecond);
BENCHMARK(BM_ReferenceTrial)->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
