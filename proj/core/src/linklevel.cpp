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

#include "uavpdc/linklevel.hpp"

#include <cmath>
#include <stdexcept>

namespace
{
    double eta_sq(const uavpdc::ChannelVector &estimate)
    {
        const double e = arma::norm(estimate) * arma::norm(estimate) / (double)estimate.n_elem;
        if (!(e > 0.0))
            throw std::invalid_argument("Combining/precoding estimate is zero; the beamformer is undefined.");
        return e;
    }

    // |x^H y / M|^2
    double normalized_gain(const uavpdc::ChannelVector &x, const uavpdc::ChannelVector &y)
    {
        if (x.n_elem != y.n_elem)
            throw std::invalid_argument("Channel vector lengths differ.");
        return std::norm(arma::cdot(x, y) / (double)x.n_elem);
    }
} // namespace

void uavpdc::PowerBudget::validate() const
{
    if (!(uplink_energy > 0.0) || !(downlink_energy > 0.0))
        throw std::invalid_argument("Energy constants E_u and E_d must be positive.");
}

double uavpdc::uplink_sinr(const ChannelVector &estimate, const ChannelVector &own_channel,
                           std::span<const ChannelVector> interferer_channels, const PowerBudget &budget)
{
    budget.validate();
    const double scale = budget.uplink_energy / eta_sq(estimate);
    const double signal = scale * normalized_gain(estimate, own_channel);
    double interference = 0.0;
    for (const auto &h : interferer_channels)
        interference += scale * normalized_gain(estimate, h);
    return signal / (interference + 1.0);
}

double uavpdc::downlink_sinr_uav(std::span<const ChannelVector> channels_to_user,
                                 std::span<const ChannelVector> precoding_estimates, std::size_t serving,
                                 const PowerBudget &budget)
{
    budget.validate();
    if (channels_to_user.size() != precoding_estimates.size())
        throw std::invalid_argument("Channel and precoder lists must be aligned by BS index.");
    if (serving >= channels_to_user.size())
        throw std::invalid_argument("Serving BS index out of range.");

    const double Ed = budget.downlink_energy;
    double signal = 0.0, interference = 0.0;
    for (std::size_t l = 0; l < channels_to_user.size(); ++l)
    {
        const double term = Ed / eta_sq(precoding_estimates[l]) *
                            normalized_gain(channels_to_user[l], precoding_estimates[l]);
        (l == serving ? signal : interference) += term;
    }
    return signal / (interference + 1.0);
}

double uavpdc::downlink_sinr_gue(const ChannelVector &own_channel, const ChannelVector &precoding_estimate,
                                 const PowerBudget &budget)
{
    budget.validate();
    return budget.downlink_energy / eta_sq(precoding_estimate) * normalized_gain(own_channel, precoding_estimate);
}

double uavpdc::downlink_sinr_gue_with_interference(std::span<const ChannelVector> channels_to_user,
                                                   std::span<const ChannelVector> precoding_estimates,
                                                   std::size_t serving, const PowerBudget &budget)
{
    // Same expression as the UAV case.
    return downlink_sinr_uav(channels_to_user, precoding_estimates, serving, budget);
}

double uavpdc::asymptotic_sinr(Scheme scheme, LinkDirection direction, UserKind user_kind,
                               const AsymptoticInputs &in, const PowerBudget &budget, const PilotConfig &pilot)
{
    budget.validate();
    if (!(in.beta_own > 0.0))
        throw std::invalid_argument("Own large-scale gain must be positive.");
    const double E = direction == LinkDirection::Uplink ? budget.uplink_energy : budget.downlink_energy;
    const double b = in.beta_own;

    if (scheme == Scheme::TrueCsi)
        return E * b;
    if (scheme == Scheme::After || scheme == Scheme::Perfect)
    {
        const double eta_hat2 = b + pilot.noise_variance();
        return E * b * b / eta_hat2;
    }

    // Before
    const double eta2 = in.own_eta2 ? *in.own_eta2 : estimate_norm_sq_asymptote(b, in.interferer_betas, pilot);
    if (direction == LinkDirection::Uplink)
    {
        double interference = 0.0;
        for (double bk : in.interferer_betas)
            interference += E * bk * bk / eta2;
        return (E * b * b / eta2) / (interference + 1.0);
    }
    if (user_kind == UserKind::Gue)
        return E * b * b / eta2;

    if (!in.own_eta2)
        throw std::invalid_argument("Downlink UAV asymptote needs the serving BS's eta^2.");
    if (in.interferer_eta2.size() != in.interferer_betas.size())
        throw std::invalid_argument("Downlink UAV asymptote needs one eta^2 per interfering BS.");
    double interference = 0.0;
    for (std::size_t l = 0; l < in.interferer_betas.size(); ++l)
    {
        if (!(in.interferer_eta2[l] > 0.0))
            throw std::invalid_argument("eta^2 values must be positive.");
        interference += E * in.interferer_betas[l] * in.interferer_betas[l] / in.interferer_eta2[l];
    }
    return (E * b * b / eta2) / (interference + 1.0);
}

std::optional<double> uavpdc::table1_high_snr(UserKind user_kind, LinkDirection direction, Scheme scheme,
                                              int num_users, int num_uavs, double beta, const PowerBudget &budget)
{
    budget.validate();
    if (num_uavs < 1 || num_uavs >= num_users)
        throw std::invalid_argument("Table entries need 1 <= K_u < K.");
    if (!(beta > 0.0))
        throw std::invalid_argument("Large-scale gain must be positive.");

    const bool uplink = direction == LinkDirection::Uplink;
    if (scheme != Scheme::Before)
        return (uplink ? budget.uplink_energy : budget.downlink_energy) * beta;

    if (uplink && user_kind == UserKind::Uav)
    {
        if (num_uavs == 1)
            return std::nullopt;
        return 1.0 / (num_uavs - 1);
    }
    if (uplink)
        return 1.0 / num_uavs;
    if (user_kind == UserKind::Uav)
        return 1.0 / (num_users - 1);
    return budget.downlink_energy * beta / (num_uavs + 1);
}
