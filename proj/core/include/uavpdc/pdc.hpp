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

#include "uavpdc/detector.hpp"

#include <span>
#include <vector>

namespace uavpdc
{
    enum class PdcMethod
    {
        None,
        GuePdc,
        UavTwoBlock,
        PerfectProjection
    };

    struct DecontaminatedEstimate
    {
        ChannelVector vector;
        std::vector<LoSComponent> removed;
        PdcMethod method = PdcMethod::None;
        bool truncated = false; // a detection pass hit its iteration cap

        // Two-block bookkeeping (UavTwoBlock only)
        std::vector<LoSComponent> first_block;  // D
        std::vector<LoSComponent> second_block; // D of the second training block, empty if not run
        std::vector<LoSComponent> matched;      // Delta D (first-block members)
        bool second_block_used = false;
    };

    /// Relative, phase-invariant distance threshold for pairing components across blocks.
    struct MatchTolerance
    {
        double epsilon_rel = 0.15;
    };

    /// Phase-aligned distance between mu1*a1 and mu2*a2, normalized by the larger norm:
    /// sqrt(||v1||^2 + ||v2||^2 - 2|v1^H v2|) / max(||v1||, ||v2||).
    double component_distance(const LoSComponent &c1, const LoSComponent &c2, const ArrayGeometry &array);

    /// GUE user: every LoS component found above the BS is interference; the estimate after
    /// successive detection (all components removed) is the decontaminated estimate.
    DecontaminatedEstimate decontaminate_gue(const ChannelVector &estimate, const MatchedFilterBank &bank,
                                             const DetectorConfig &config);

    /// Greedy one-to-one pairing of first- and second-block components, closest pairs first,
    /// keeping pairs with distance below the tolerance. Returns the first-block members.
    std::vector<LoSComponent> match_components(std::span<const LoSComponent> first, std::span<const LoSComponent> second,
                                               const MatchTolerance &tol, const ArrayGeometry &array);

    /// UAV user, two training blocks. With at most one first-block detection the first-block
    /// estimate is kept. Otherwise the components common to both blocks are taken as the
    /// UAV's own path and every other first-block component is subtracted from the
    /// first-block estimate. No common component leaves the estimate unchanged.
    DecontaminatedEstimate decontaminate_uav(const ChannelVector &estimate_block1, const ChannelVector &estimate_block2,
                                             const MatchedFilterBank &bank, const DetectorConfig &config,
                                             const MatchTolerance &tol);

    /// Genie projection (I - A A^+) * estimate with A = [a(aoa_1) ... a(aoa_n)].
    /// Rejects n >= M and rank-deficient A (relative rank tolerance 1e-8).
    DecontaminatedEstimate perfect_pdc(const ChannelVector &estimate, std::span<const Aoa> interferer_aoas,
                                       const ArrayGeometry &array);

    /// Explicit M x M projector onto the orthogonal complement of the columns of A.
    arma::cx_mat orthogonal_complement_projector(const arma::cx_mat &A);

} // namespace uavpdc
