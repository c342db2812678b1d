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

#include "uavpdc/training.hpp"
#include "uavpdc/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace uavpdc
{
    /// Energy constants of the 1/M power scaling: p_u = E_u / M, p_d = E_d / M (noise-normalized).
    struct PowerBudget
    {
        double uplink_energy = 1.0;   // E_u
        double downlink_energy = 1.0; // E_d

        void validate() const;
    };

    struct SinrSample
    {
        double value = 0.0; // linear
        UserKind user_kind = UserKind::Uav;
        LinkDirection direction = LinkDirection::Uplink;
        Scheme scheme = Scheme::Before;
    };

    /// Uplink MRC SINR with combiner estimate/(eta*sqrt(M)), eta^2 = ||estimate||^2 / M:
    ///   (E_u/eta^2)|est^H h_own / M|^2 / (sum_k (E_u/eta^2)|est^H h_k / M|^2 + 1)
    double uplink_sinr(const ChannelVector &estimate, const ChannelVector &own_channel,
                       std::span<const ChannelVector> interferer_channels, const PowerBudget &budget);

    /// Downlink SINR of the UAV served by BS `serving` under conjugate precoding at every BS.
    /// channels_to_user[l] is the channel between BS l and the UAV, precoding_estimates[l]
    /// the estimate BS l precodes with. Every non-serving BS interferes.
    double downlink_sinr_uav(std::span<const ChannelVector> channels_to_user,
                             std::span<const ChannelVector> precoding_estimates, std::size_t serving,
                             const PowerBudget &budget);

    /// Downlink SINR of a GUE: (E_d/eta^2)|h^H est / M|^2, no inter-cell interference.
    double downlink_sinr_gue(const ChannelVector &own_channel, const ChannelVector &precoding_estimate,
                             const PowerBudget &budget);

    /// Sensitivity variant of the GUE downlink SINR that keeps the interference of other BSs.
    double downlink_sinr_gue_with_interference(std::span<const ChannelVector> channels_to_user,
                                               std::span<const ChannelVector> precoding_estimates,
                                               std::size_t serving, const PowerBudget &budget);

    /// Large-scale inputs of the closed-form M -> infinity SINRs.
    ///   Uplink:        beta_own = beta_ll, interferer_betas = {beta_lk : k in U_l}.
    ///   Downlink UAV:  beta_own = beta_ii, interferer_betas = {beta_li : l != i},
    ///                  interferer_eta2 = {eta^2_{l,inf} : l != i} (same order),
    ///                  own_eta2 = eta^2_{i,inf}.
    ///   Downlink GUE:  beta_own = beta_jj, own_eta2 = eta^2_{j,inf}.
    /// Before-scheme uplink derives eta^2 from the betas and the pilot when own_eta2 is unset.
    struct AsymptoticInputs
    {
        double beta_own = 1.0;
        std::vector<double> interferer_betas;
        std::vector<double> interferer_eta2;
        std::optional<double> own_eta2;
    };

    /// Closed-form limit of the finite-M SINR. Before: contaminated estimate. After and
    /// Perfect: interference removed, eta_hat^2 = beta_own + 1/(tau*p_p). TrueCsi: E*beta_own.
    double asymptotic_sinr(Scheme scheme, LinkDirection direction, UserKind user_kind, const AsymptoticInputs &inputs,
                           const PowerBudget &budget, const PilotConfig &pilot);

    /// High-SNR, equal-gain table of asymptotic SINRs. Returns nullopt for the uplink UAV
    /// before decontamination when K_u = 1 (no interferer: not interference limited).
    std::optional<double> table1_high_snr(UserKind user_kind, LinkDirection direction, Scheme scheme, int num_users,
                                          int num_uavs, double beta, const PowerBudget &budget);

} // namespace uavpdc
