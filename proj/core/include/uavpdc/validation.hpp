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

#include "uavpdc/linklevel.hpp"
#include "uavpdc/rng.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace uavpdc
{
    /// Synthetic network where every same-pilot link has the same large-scale gain.
    /// Users 0..K_u-1 are UAVs (LoS, uniformly random AoA per BS), the others GUEs (Rayleigh,
    /// heard only by their own BS). Every BS hears every UAV in training.
    struct EqualBetaSetup
    {
        arma::uword num_antennas = 4096;
        int num_users = 9; // K
        int num_uavs = 3;  // K_u
        double beta = 1.0;
        double energy = 1000.0;     // E_u = E_d
        double pilot_gain = 9000.0; // tau * p_p

        void validate() const;
    };

    /// Per-kind average of the linear SINRs within one trial.
    struct EqualBetaSinr
    {
        double ul_uav = 0.0;
        double ul_gue = 0.0;
        double dl_uav = 0.0;
        double dl_gue = 0.0;
    };

    /// One random draw of the equal-gain network, evaluated for each requested scheme
    /// (Before, Perfect or TrueCsi). Output is aligned with `schemes`.
    std::vector<EqualBetaSinr> equal_beta_trial(const EqualBetaSetup &setup, std::span<const Scheme> schemes, Rng &rng);

    /// Closed-form M -> infinity values for the same network.
    EqualBetaSinr equal_beta_asymptote(const EqualBetaSetup &setup, Scheme scheme);

    struct CriterionResult
    {
        int id = 0;
        std::string title;
        bool measurement_passed = false;
        double seconds = 0.0;
        double limit_seconds = 0.0;
        std::vector<std::string> details;

        bool passed() const { return measurement_passed && seconds < limit_seconds; }
    };

    struct ValidationOptions
    {
        std::uint64_t seed = 20261018;
        unsigned workers = 1;
    };

    constexpr int num_criteria = 9;

    /// Runs acceptance criterion `id` (1..9) with the tolerances and trial counts fixed in code.
    CriterionResult run_criterion(int id, const ValidationOptions &options = {});

    /// "PASS [3] title (12.3 s / 300 s)" followed by indented details.
    std::string format_result(const CriterionResult &result);

} // namespace uavpdc
