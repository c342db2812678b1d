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

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

using namespace uavpdc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    double horizontal(const Point3 &a, const Point3 &b)
    {
        return std::hypot(a.x - b.x, a.y - b.y);
    }

    double nearest_pair(const NetworkLayout &l)
    {
        double best = 1e300;
        for (std::size_t i = 0; i < l.sites.size(); ++i)
            for (std::size_t j = i + 1; j < l.sites.size(); ++j)
                best = std::min(best, horizontal(l.sites[i].position, l.sites[j].position));
        return best;
    }

    LayoutParams params(double radius, int reuse, int cells)
    {
        LayoutParams p;
        p.cell_radius = radius;
        p.reuse_factor = reuse;
        p.num_cells = cells;
        return p;
    }
} // namespace

TEST_CASE("Hexagonal reuse factors", "[topology]")
{
    for (int r : {1, 3, 4, 7, 9, 12, 13, 19})
        CHECK(is_valid_reuse_factor(r));
    for (int r : {0, 2, 5, 6, 8, 10, 11})
        CHECK_FALSE(is_valid_reuse_factor(r));
    CHECK_THAT(co_channel_distance(500.0, 7), WithinRel(std::sqrt(21.0) * 500.0, 1e-12));
}

TEST_CASE("Reuse-7 layout of nine co-pilot cells", "[topology]")
{
    const NetworkLayout l = build_layout(params(500.0, 7, 9));
    REQUIRE(l.sites.size() == 9);
    CHECK_THAT(nearest_pair(l), WithinRel(std::sqrt(21.0) * 500.0, 1e-9));
    CHECK_THAT(nearest_pair(l), WithinAbs(2291.0, 1.0));

    // the centre cell and its six first-tier co-pilot neighbours
    CHECK_THAT(std::hypot(l.sites[0].position.x, l.sites[0].position.y), WithinAbs(0.0, 1e-9));
    for (int k = 1; k <= 6; ++k)
        CHECK_THAT(horizontal(l.sites[0].position, l.sites[(std::size_t)k].position),
                   WithinRel(std::sqrt(21.0) * 500.0, 1e-9));
    for (const SiteGeometry &s : l.sites)
        CHECK(s.position.z == 25.0);
}

TEST_CASE("Reuse-1 layout of two adjacent cells", "[topology]")
{
    const NetworkLayout l = build_layout(params(500.0, 1, 2));
    REQUIRE(l.sites.size() == 2);
    CHECK_THAT(nearest_pair(l), WithinRel(std::sqrt(3.0) * 500.0, 1e-9));
    CHECK_THAT(nearest_pair(l), WithinAbs(866.0, 0.1));
}

TEST_CASE("Layout preconditions", "[topology]")
{
    CHECK_THROWS_AS(build_layout(params(500.0, 7, 1)), std::invalid_argument);
    CHECK_THROWS_AS(build_layout(params(500.0, 5, 9)), std::invalid_argument);
    CHECK_THROWS_AS(build_layout(params(-1.0, 7, 9)), std::invalid_argument);
}

TEST_CASE("User drop", "[topology]")
{
    const LayoutParams p = params(500.0, 7, 9);
    const NetworkLayout base = build_layout(p);
    Rng rng = substream(42, 0);
    const NetworkLayout l = place_users(base, 3, p, rng);
    REQUIRE(l.users.size() == 9);
    CHECK(l.num_uavs() == 3);

    for (std::size_t k = 0; k < l.users.size(); ++k)
    {
        const UserPlacement &u = l.users[k];
        CHECK(u.serving_cell == (int)k);
        const double r = horizontal(u.position, l.sites[k].position);
        CHECK(r >= p.min_horizontal_distance);
        CHECK(r <= p.cell_radius);
        if (u.kind == UserKind::Gue)
            CHECK(u.position.z == 1.5);
        else
        {
            CHECK(u.position.z > 25.0);
            CHECK(u.position.z <= 300.0);
        }
    }

    Rng again = substream(42, 0);
    const NetworkLayout l2 = place_users(base, 3, p, again);
    for (std::size_t k = 0; k < l.users.size(); ++k)
    {
        CHECK(l.users[k].position.x == l2.users[k].position.x);
        CHECK(l.users[k].position.y == l2.users[k].position.y);
        CHECK(l.users[k].position.z == l2.users[k].position.z);
        CHECK(l.users[k].kind == l2.users[k].kind);
    }

    Rng r3 = substream(1, 1);
    CHECK_THROWS_AS(place_users(base, 9, p, r3), std::invalid_argument);
    CHECK_THROWS_AS(place_users(base, 0, p, r3), std::invalid_argument);
}

TEST_CASE("UAV cells are spread over the network", "[topology]")
{
    const LayoutParams p = params(500.0, 7, 9);
    const NetworkLayout base = build_layout(p);
    std::vector<int> hits(9, 0);
    for (std::uint64_t t = 0; t < 900; ++t)
    {
        Rng rng = substream(3, t);
        const NetworkLayout l = place_users(base, 3, p, rng);
        for (std::size_t k = 0; k < 9; ++k)
            hits[k] += l.users[k].kind == UserKind::Uav ? 1 : 0;
    }
    // expected 300 per cell, binomial sd about 14
    for (int h : hits)
        CHECK(std::abs(h - 300) < 80);
}

TEST_CASE("Angles of arrival from positions", "[topology]")
{
    SiteGeometry bs{{0.0, 0.0, 25.0}, 0};
    const double pi = std::numbers::pi;

    UserPlacement above{{0.0, 0.0, 125.0}, UserKind::Uav, 0};
    LinkGeometry g = geometry_to_aoa(bs, above);
    CHECK_THAT(g.aoa.theta, WithinAbs(0.0, 1e-12));
    CHECK_THAT(g.distance, WithinAbs(100.0, 1e-9));

    UserPlacement east{{500.0, 0.0, 25.0}, UserKind::Uav, 0};
    g = geometry_to_aoa(bs, east);
    CHECK_THAT(g.aoa.theta, WithinAbs(pi / 2.0, 1e-12));
    CHECK_THAT(g.aoa.phi, WithinAbs(0.0, 1e-12));
    CHECK_THAT(g.distance, WithinAbs(500.0, 1e-9));

    UserPlacement north{{0.0, 100.0, 125.0}, UserKind::Uav, 0};
    g = geometry_to_aoa(bs, north);
    CHECK_THAT(g.aoa.theta, WithinAbs(pi / 4.0, 1e-12));
    CHECK_THAT(g.aoa.phi, WithinAbs(pi / 2.0, 1e-12));
    CHECK_THAT(g.distance, WithinAbs(100.0 * std::sqrt(2.0), 1e-9));

    UserPlacement same{{0.0, 0.0, 25.0}, UserKind::Uav, 0};
    CHECK_THROWS_AS(geometry_to_aoa(bs, same), std::invalid_argument);
}

TEST_CASE("Layout CSV dump", "[topology]")
{
    const LayoutParams p = params(500.0, 7, 9);
    Rng rng = substream(9, 0);
    const NetworkLayout l = place_users(build_layout(p), 3, p, rng);
    std::ostringstream out;
    write_layout_csv(out, l);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "id,x,y,z,kind,serving_cell");
    int rows = 0, uav = 0, bs = 0;
    while (std::getline(in, line))
    {
        ++rows;
        uav += line.find(",UAV,") != std::string::npos ? 1 : 0;
        bs += line.find(",BS,") != std::string::npos ? 1 : 0;
    }
    CHECK(rows == 18);
    CHECK(uav == 3);
    CHECK(bs == 9);
}
