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

#include "uavpdc/cdf.hpp"

#include <optional>
#include <ostream>
#include <span>
#include <vector>

namespace uavpdc
{
    struct GroupStats
    {
        SampleGroup group;
        std::size_t count = 0;
        double median_db = 0.0;
        double p5_db = 0.0;
        double p95_db = 0.0;
        std::optional<double> gap_to_perfect_db; // median(Perfect) - median(this group)
        std::optional<double> gap_to_truecsi_db; // median(TrueCsi) - median(this group)
    };

    struct DetectorStats
    {
        UserKind kind = UserKind::Uav;
        std::size_t bs_count = 0;
        std::optional<double> identification_rate; // UAV BSs with at least one LoS interferer
        double false_alarms_per_bs = 0.0;
        double false_alarm_rate = 0.0; // fraction of BSs with at least one false alarm
        std::optional<double> miss_rate; // missed / total LoS interferers
        double truncation_rate = 0.0;
    };

    struct Report
    {
        int num_uavs = 0;
        std::vector<GroupStats> groups;
        std::vector<DetectorStats> detector;
    };

    /// Pure post-processing of persisted samples and diagnostics.
    Report compare_report(std::span<const SampleRecord> samples, std::span<const BsDiagnostics> diagnostics,
                          int num_uavs);

    void render_report(std::ostream &out, const Report &report);

} // namespace uavpdc
