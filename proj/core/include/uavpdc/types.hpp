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

#include <cmath>
#include <string>
#include <string_view>

#include <armadillo>

namespace uavpdc
{
    /// Length-M complex vector: a true channel, an estimate, a residual or a steering vector.
    using ChannelVector = arma::cx_vec;

    /// Angle of arrival at a BS. `theta` is the polar angle from the upward vertical
    /// (0 = zenith, pi/2 = horizon), `phi` the azimuth measured from the x axis.
    struct Aoa
    {
        double theta = 0.0;
        double phi = 0.0;
    };

    enum class UserKind
    {
        Uav,
        Gue
    };

    enum class LinkDirection
    {
        Uplink,
        Downlink
    };

    /// Which estimate a BS combines/precodes with.
    enum class Scheme
    {
        Before,  // contaminated LS estimate
        After,   // proposed distributed decontamination
        Perfect, // genie projection onto the interferer null space
        TrueCsi  // true channel, upper bound
    };

    std::string_view to_string(UserKind kind);
    std::string_view to_string(LinkDirection direction);
    std::string_view to_string(Scheme scheme);

    // Inverse of to_string; throw std::invalid_argument on unknown names.
    UserKind parse_user_kind(std::string_view text);
    LinkDirection parse_link_direction(std::string_view text);
    Scheme parse_scheme(std::string_view text);

    inline double to_db(double linear) { return 10.0 * std::log10(linear); }
    inline double from_db(double db) { return std::pow(10.0, db / 10.0); }

} // namespace uavpdc
