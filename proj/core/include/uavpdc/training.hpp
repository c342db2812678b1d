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

#include "uavpdc/rng.hpp"
#include "uavpdc/types.hpp"

#include <limits>
#include <span>

namespace uavpdc
{
    /// Uplink pilot: length tau (symbols) sent at noise-normalized power p_p.
    /// Only the processing gain tau * p_p matters for the post-correlation estimate.
    struct PilotConfig
    {
        double length = 1.0; // tau
        double power = 1.0;  // p_p

        double processing_gain() const { return length * power; }

        /// Per-entry variance 1/(tau * p_p) of the estimation noise; 0 when the gain is infinite.
        double noise_variance() const;

        void validate() const;

        /// Noise-free training, used for planted-signal checks.
        static PilotConfig noiseless() { return {1.0, std::numeric_limits<double>::infinity()}; }
    };

    struct LsEstimate
    {
        ChannelVector vector;
        int owner_bs = 0;
        int block_index = 0;
    };

    /// Contaminated LS estimate h_own + sum(interferers) + n, n ~ CN(0, I/(tau*p_p)),
    /// generated directly in post-correlation form.
    LsEstimate ls_estimate(const ChannelVector &own_channel, std::span<const ChannelVector> interferer_channels,
                           const PilotConfig &pilot, Rng &rng, int owner_bs = 0, int block_index = 0);

    /// Reference route: materializes the M x tau received pilot block
    /// Y = sqrt(tau*p_p) * (h_own + sum h_k) psi^T + N with a unit-norm pilot psi and
    /// correlates, Y * conj(psi) / sqrt(tau*p_p). Requires an integer tau.
    LsEstimate ls_estimate_from_received(const ChannelVector &own_channel,
                                         std::span<const ChannelVector> interferer_channels,
                                         const PilotConfig &pilot, Rng &rng, int owner_bs = 0, int block_index = 0);

    /// eta^2 limit of ||h_hat||^2 / M: beta_own + sum(beta_interferers) + 1/(tau*p_p).
    double estimate_norm_sq_asymptote(double beta_own, std::span<const double> interferer_betas,
                                      const PilotConfig &pilot);

} // namespace uavpdc
