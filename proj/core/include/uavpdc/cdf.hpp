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

#include "uavpdc/simulation.hpp"

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace uavpdc
{
    /// (user kind, direction, scheme) label of a sample group.
    struct SampleGroup
    {
        UserKind kind = UserKind::Uav;
        LinkDirection direction = LinkDirection::Uplink;
        Scheme scheme = Scheme::Before;

        auto operator<=>(const SampleGroup &) const = default;
        /// e.g. "UAV_UL_before"
        std::string name() const;
    };

    /// Every (kind, direction, scheme) combination, in enum order.
    std::vector<SampleGroup> all_groups();

    struct CdfSeries
    {
        SampleGroup group;
        int num_uavs = 0;
        std::vector<double> values_db;     // non-decreasing
        std::vector<double> probabilities; // i/n, i = 1..n

        /// Smallest value whose cumulative probability reaches p (0 < p <= 1).
        double quantile(double p) const;
    };

    struct CdfSet
    {
        std::vector<CdfSeries> series;
        std::vector<std::string> warnings; // one per requested group without samples
    };

    /// Empirical CDF of each requested group. Groups without samples are omitted and reported
    /// in `warnings`.
    CdfSet empirical_cdf(std::span<const SampleRecord> samples, std::span<const SampleGroup> groups, int num_uavs);

    /// Sorted dB values of one group.
    std::vector<double> group_values(std::span<const SampleRecord> samples, const SampleGroup &group);

    /// True when `upper` lies on or to the right of `lower` at every probability level,
    /// i.e. its q-quantile is >= that of `lower` for all q. Both series must have the same length.
    bool stochastically_dominates(const CdfSeries &upper, const CdfSeries &lower);

    /// CSV with columns sinr_db,probability.
    void write_cdf_csv(std::ostream &out, const CdfSeries &series);

} // namespace uavpdc
