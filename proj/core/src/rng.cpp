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

#include "uavpdc/rng.hpp"

#include <cmath>

namespace
{
    // SplitMix64 finalizer
    std::uint64_t mix64(std::uint64_t z)
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
} // namespace

uavpdc::Rng uavpdc::substream(std::uint64_t seed, std::uint64_t index)
{
    const std::uint64_t a = mix64(seed);
    const std::uint64_t b = mix64(a ^ mix64(index + 0x632be59bd9b4e019ULL));
    const std::uint64_t c = mix64(b);
    std::seed_seq seq{static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32),
                      static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(c >> 32)};
    return Rng(seq);
}

double uavpdc::uniform(Rng &rng, double lo, double hi)
{
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::complex<double> uavpdc::complex_normal(Rng &rng, double variance)
{
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5 * variance));
    const double re = nd(rng);
    const double im = nd(rng);
    return {re, im};
}

arma::cx_vec uavpdc::complex_normal_vector(Rng &rng, arma::uword n, double variance)
{
    std::normal_distribution<double> nd(0.0, std::sqrt(0.5 * variance));
    arma::cx_vec v(n);
    for (arma::uword i = 0; i < n; ++i)
    {
        const double re = nd(rng);
        const double im = nd(rng);
        v(i) = {re, im};
    }
    return v;
}
