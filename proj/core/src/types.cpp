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

#include "uavpdc/types.hpp"

#include <stdexcept>

std::string_view uavpdc::to_string(UserKind kind)
{
    return kind == UserKind::Uav ? "UAV" : "GUE";
}

std::string_view uavpdc::to_string(LinkDirection direction)
{
    return direction == LinkDirection::Uplink ? "UL" : "DL";
}

std::string_view uavpdc::to_string(Scheme scheme)
{
    switch (scheme)
    {
    case Scheme::Before:
        return "before";
    case Scheme::After:
        return "after";
    case Scheme::Perfect:
        return "perfect";
    case Scheme::TrueCsi:
        return "truecsi";
    }
    return "unknown";
}

uavpdc::UserKind uavpdc::parse_user_kind(std::string_view text)
{
    if (text == "UAV")
        return UserKind::Uav;
    if (text == "GUE")
        return UserKind::Gue;
    throw std::invalid_argument("Unknown user kind '" + std::string(text) + "'.");
}

uavpdc::LinkDirection uavpdc::parse_link_direction(std::string_view text)
{
    if (text == "UL")
        return LinkDirection::Uplink;
    if (text == "DL")
        return LinkDirection::Downlink;
    throw std::invalid_argument("Unknown link direction '" + std::string(text) + "'.");
}

uavpdc::Scheme uavpdc::parse_scheme(std::string_view text)
{
    for (Scheme s : {Scheme::Before, Scheme::After, Scheme::Perfect, Scheme::TrueCsi})
        if (text == to_string(s))
            return s;
    throw std::invalid_argument("Unknown scheme '" + std::string(text) + "' (expected before, after, perfect or truecsi).");
}
