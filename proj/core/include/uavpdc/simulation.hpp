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

#include "uavpdc/scenario.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace uavpdc
{
    /// One BS-user link of a trial. The channel is empty when no scheme needs it.
    struct LinkState
    {
        double beta = 0.0;
        LinkGeometry geometry;
        LinkType type = LinkType::LoS;
        ChannelVector channel;
    };

    /// Everything drawn for one trial, before any estimation scheme runs.
    struct TrialRealization
    {
        std::uint64_t trial = 0;
        NetworkLayout layout;
        std::vector<std::vector<LinkState>> links;           // links[bs][user]
        std::vector<std::vector<std::size_t>> interferers;   // co-pilot users heard by each BS in training
        std::vector<ChannelVector> estimates;                // first training block, per BS
        std::vector<ChannelVector> second_estimates;         // second block; empty vector if not drawn
    };

    /// One SINR value with its labels.
    struct SampleRecord
    {
        std::uint64_t trial = 0;
        std::uint32_t user = 0;
        UserKind kind = UserKind::Uav;
        LinkDirection direction = LinkDirection::Uplink;
        Scheme scheme = Scheme::Before;
        double sinr_db = 0.0;
    };

    /// Detector bookkeeping of the proposed scheme at one BS.
    struct BsDiagnostics
    {
        std::uint64_t trial = 0;
        std::uint32_t bs = 0;
        UserKind kind = UserKind::Uav;
        int los_interferers = 0;   // LoS (UAV) interferers in the first block
        int detected = 0;          // |D|
        int false_alarms = 0;      // detections not associated with any true LoS path
        int misses = 0;            // LoS interferers without an associated detection
        bool truncated = false;
        int second_detected = -1;  // -1: second block not processed
        int matched = -1;          // |Delta D|, -1: second block not processed
        int identified = -1;       // UAV only: 1 own path kept and every interferer removed, -1 n/a
    };

    struct TrialOutput
    {
        std::vector<SampleRecord> samples;
        std::vector<BsDiagnostics> diagnostics;
    };

    struct RunResult
    {
        std::vector<SampleRecord> samples;       // ordered by trial, user, direction, scheme
        std::vector<BsDiagnostics> diagnostics;  // ordered by trial, bs
    };

    /// Two steering directions are taken as the same path when |a1^H a2| / M reaches this value.
    constexpr double los_association_threshold = 0.5;

    TrialRealization realize_trial(const ScenarioContext &ctx, std::uint64_t trial);

    TrialOutput evaluate_trial(const ScenarioContext &ctx, const TrialRealization &realization);

    /// Realize and evaluate trials [0, config.trials) on config.workers threads. Trial t
    /// draws only from substream(seed, t), so the result does not depend on the worker count.
    /// `progress` (optional) is called with the number of finished trials.
    RunResult run_trials(const ScenarioContext &ctx, const std::function<void(std::uint64_t)> &progress = {});

    RunResult run_trials(const ScenarioConfig &config);

} // namespace uavpdc
