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

#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <armadillo>

namespace uavpdc
{
    using Rng = std::mt19937_64;

    /// Independent random stream for work unit `index` of a run seeded with `seed`.
    /// The stream depends only on (seed, index), never on execution order.
    Rng substream(std::uint64_t seed, std::uint64_t index);

    double uniform(Rng &rng, double lo, double hi);

    /// Circularly symmetric complex Gaussian sample with E|z|^2 = variance.
    std::complex<double> complex_normal(Rng &rng, double variance);

    /// Vector of n i.i.d. CN(0, variance) entries.
    arma::cx_vec complex_normal_vector(Rng &rng, arma::uword n, double variance);

} // namespace uavpdc
