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

#include <ostream>
#include <vector>

namespace uavpdc
{
    struct Point3
    {
        double x = 0.0;
        double y = 0.0;
        double z = 0.0;
    };

    struct SiteGeometry
    {
        Point3 position; // BS antenna position [m]
        int cell_index = 0;
    };

    struct UserPlacement
    {
        Point3 position;
        UserKind kind = UserKind::Gue;
        int serving_cell = 0;
    };

    /// Geometry knobs of the co-pilot cell layout.
    struct LayoutParams
    {
        double cell_radius = 500.0;
        int reuse_factor = 7;
        int num_cells = 9; // K, one tracked-pilot user per cell
        double bs_height = 25.0;
        double uav_height_min = 25.0;
        double uav_height_max = 300.0;
        double gue_height = 1.5;
        double min_horizontal_distance = 20.0;
    };

    /// The K co-pilot cells and the K users sharing the tracked pilot.
    /// users[k] is served by sites[k].
    struct NetworkLayout
    {
        std::vector<SiteGeometry> sites;
        std::vector<UserPlacement> users;
        int reuse_factor = 1;
        double cell_radius = 0.0;

        std::size_t num_uavs() const;
    };

    struct LinkGeometry
    {
        Aoa aoa;
        double distance = 0.0; // 3-D [m]
    };

    /// True when R = i^2 + i*j + j^2 for integers i, j >= 0 (hexagonal reuse pattern).
    bool is_valid_reuse_factor(int reuse_factor);

    /// Co-channel distance sqrt(3R) * cell_radius between neighbouring co-pilot cells.
    double co_channel_distance(double cell_radius, int reuse_factor);

    /// Place the K co-pilot BSs on the hexagonal reuse-R co-channel lattice,
    /// nearest-to-origin first. The returned layout has no users.
    NetworkLayout build_layout(const LayoutParams &params);

    /// Drop one user per cell: `num_uavs` randomly chosen cells get a UAV,
    /// the rest a GUE. Horizontal positions are uniform over the serving disc.
    NetworkLayout place_users(const NetworkLayout &layout, int num_uavs, const LayoutParams &params, Rng &rng);

    /// Draw one fresh user position inside `cell` (used for re-drawn interferers).
    UserPlacement draw_user(const SiteGeometry &site, UserKind kind, const LayoutParams &params, Rng &rng);

    LinkGeometry geometry_to_aoa(const SiteGeometry &bs, const UserPlacement &user);

    /// CSV dump: id,x,y,z,kind,serving_cell with kind in {BS,UAV,GUE}.
    void write_layout_csv(std::ostream &out, const NetworkLayout &layout);

} // namespace uavpdc
