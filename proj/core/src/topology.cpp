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

#include "uavpdc/topology.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace
{
    struct LatticePoint
    {
        double x, y;
        long long dist_key;
        double angle;
    };

    // (i, j) with i^2 + i*j + j^2 = R, preferring i >= j
    std::pair<int, int> reuse_shift(int reuse_factor)
    {
        for (int i = 0; i * i <= reuse_factor; ++i)
            for (int j = 0; j <= i; ++j)
                if (i * i + i * j + j * j == reuse_factor)
                    return {i, j};
        return {-1, -1};
    }
} // namespace

std::size_t uavpdc::NetworkLayout::num_uavs() const
{
    return (std::size_t)std::count_if(users.begin(), users.end(),
                                      [](const UserPlacement &u)
                                      { return u.kind == UserKind::Uav; });
}

bool uavpdc::is_valid_reuse_factor(int reuse_factor)
{
    return reuse_factor >= 1 && reuse_shift(reuse_factor).first >= 0;
}

double uavpdc::co_channel_distance(double cell_radius, int reuse_factor)
{
    return std::sqrt(3.0 * reuse_factor) * cell_radius;
}

uavpdc::NetworkLayout uavpdc::build_layout(const LayoutParams &params)
{
    if (params.cell_radius <= 0.0)
        throw std::invalid_argument("Cell radius must be positive.");
    if (!is_valid_reuse_factor(params.reuse_factor))
        throw std::invalid_argument("Reuse factor " + std::to_string(params.reuse_factor) +
                                    " is not a hexagonal reuse factor (i^2 + i*j + j^2).");
    if (params.num_cells < 2)
        throw std::invalid_argument("At least two co-pilot cells are required (1 <= K_u < K).");
    if (params.bs_height <= 0.0)
        throw std::invalid_argument("BS height must be positive.");

    // Cell-centre lattice: spacing sqrt(3) * radius. The co-pilot lattice is spanned
    // by the reuse shift s1 = i*u1 + j*u2 and its 60 degree rotation.
    const auto [i, j] = reuse_shift(params.reuse_factor);
    const double spacing = std::sqrt(3.0) * params.cell_radius;
    const double s1x = spacing * (i + 0.5 * j);
    const double s1y = spacing * (0.5 * std::sqrt(3.0) * j);
    const double c60 = 0.5, s60 = 0.5 * std::sqrt(3.0);
    const double s2x = c60 * s1x - s60 * s1y;
    const double s2y = s60 * s1x + c60 * s1y;

    const double d = co_channel_distance(params.cell_radius, params.reuse_factor);
    const int span = (int)std::ceil(std::sqrt((double)params.num_cells)) + 2;

    std::vector<LatticePoint> points;
    for (int a = -span; a <= span; ++a)
        for (int b = -span; b <= span; ++b)
        {
            const double x = a * s1x + b * s2x;
            const double y = a * s1y + b * s2y;
            const double r2 = (x * x + y * y) / (d * d);
            double angle = std::atan2(y, x);
            if (angle < -1e-9)
                angle += 2.0 * std::numbers::pi;
            points.push_back({x, y, std::llround(r2 * 1e6), r2 == 0.0 ? 0.0 : angle});
        }
    std::sort(points.begin(), points.end(), [](const LatticePoint &p, const LatticePoint &q)
              { return p.dist_key != q.dist_key ? p.dist_key < q.dist_key : p.angle < q.angle; });

    NetworkLayout layout;
    layout.reuse_factor = params.reuse_factor;
    layout.cell_radius = params.cell_radius;
    for (int k = 0; k < params.num_cells; ++k)
        layout.sites.push_back({{points[k].x, points[k].y, params.bs_height}, k});
    return layout;
}

uavpdc::UserPlacement uavpdc::draw_user(const SiteGeometry &site, UserKind kind, const LayoutParams &params, Rng &rng)
{
    const double r_min = params.min_horizontal_distance;
    const double r_max = params.cell_radius;
    const double radius = std::sqrt(uniform(rng, r_min * r_min, r_max * r_max));
    const double angle = uniform(rng, -std::numbers::pi, std::numbers::pi);

    double height = params.gue_height;
    if (kind == UserKind::Uav)
    {
        // (h_min, h_max]: a UAV is strictly above the BS when h_min equals the BS height
        height = params.uav_height_max - uniform(rng, 0.0, 1.0) * (params.uav_height_max - params.uav_height_min);
    }

    UserPlacement user;
    user.position = {site.position.x + radius * std::cos(angle), site.position.y + radius * std::sin(angle), height};
    user.kind = kind;
    user.serving_cell = site.cell_index;
    return user;
}

uavpdc::NetworkLayout uavpdc::place_users(const NetworkLayout &layout, int num_uavs, const LayoutParams &params, Rng &rng)
{
    const int num_cells = (int)layout.sites.size();
    if (num_uavs < 1 || num_uavs >= num_cells)
        throw std::invalid_argument("Number of UAVs must satisfy 1 <= K_u < K (K_u = " + std::to_string(num_uavs) +
                                    ", K = " + std::to_string(num_cells) + ").");
    if (params.min_horizontal_distance < 0.0 || params.min_horizontal_distance >= params.cell_radius)
        throw std::invalid_argument("Minimum horizontal distance must lie in [0, cell radius).");
    if (params.uav_height_min < params.bs_height || params.uav_height_max < params.uav_height_min)
        throw std::invalid_argument("UAV heights must satisfy BS height <= h_min <= h_max.");
    if (params.gue_height <= 0.0 || params.gue_height >= params.bs_height)
        throw std::invalid_argument("GUE height must lie in (0, BS height).");

    std::vector<int> cells((std::size_t)num_cells);
    std::iota(cells.begin(), cells.end(), 0);
    std::shuffle(cells.begin(), cells.end(), rng);
    std::vector<UserKind> kinds((std::size_t)num_cells, UserKind::Gue);
    for (int k = 0; k < num_uavs; ++k)
        kinds[(std::size_t)cells[(std::size_t)k]] = UserKind::Uav;

    NetworkLayout out = layout;
    out.users.clear();
    for (int k = 0; k < num_cells; ++k)
        out.users.push_back(draw_user(layout.sites[(std::size_t)k], kinds[(std::size_t)k], params, rng));
    return out;
}

uavpdc::LinkGeometry uavpdc::geometry_to_aoa(const SiteGeometry &bs, const UserPlacement &user)
{
    const double dx = user.position.x - bs.position.x;
    const double dy = user.position.y - bs.position.y;
    const double dz = user.position.z - bs.position.z;
    const double horizontal = std::hypot(dx, dy);
    const double distance = std::hypot(horizontal, dz);
    if (distance == 0.0)
        throw std::invalid_argument("User and BS positions coincide.");

    LinkGeometry g;
    g.aoa.theta = std::atan2(horizontal, dz);
    g.aoa.phi = horizontal == 0.0 ? 0.0 : std::atan2(dy, dx);
    g.distance = distance;
    return g;
}

void uavpdc::write_layout_csv(std::ostream &out, const NetworkLayout &layout)
{
    out << "id,x,y,z,kind,serving_cell\n";
    for (const auto &site : layout.sites)
        out << "bs" << site.cell_index << ',' << site.position.x << ',' << site.position.y << ','
            << site.position.z << ",BS," << site.cell_index << '\n';
    for (std::size_t k = 0; k < layout.users.size(); ++k)
    {
        const auto &u = layout.users[k];
        out << "user" << k << ',' << u.position.x << ',' << u.position.y << ',' << u.position.z << ','
            << to_string(u.kind) << ',' << u.serving_cell << '\n';
    }
}
