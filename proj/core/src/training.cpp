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

#include "uavpdc/training.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace
{
    void check_dimensions(const uavpdc::ChannelVector &own, std::span<const uavpdc::ChannelVector> interferers)
    {
        if (own.n_elem == 0)
            throw std::invalid_argument("Own channel is empty.");
        for (const auto &h : interferers)
            if (h.n_elem != own.n_elem)
                throw std::invalid_argument("Interferer channel length differs from the own channel length.");
    }
} // namespace

double uavpdc::PilotConfig::noise_variance() const
{
    const double g = processing_gain();
    return std::isinf(g) ? 0.0 : 1.0 / g;
}

void uavpdc::PilotConfig::validate() const
{
    if (!(length >= 1.0))
        throw std::invalid_argument("Pilot length must be at least 1.");
    if (!(power > 0.0))
        throw std::invalid_argument("Pilot power must be positive.");
}

uavpdc::LsEstimate uavpdc::ls_estimate(const ChannelVector &own_channel, std::span<const ChannelVector> interferer_channels,
                                       const PilotConfig &pilot, Rng &rng, int owner_bs, int block_index)
{
    pilot.validate();
    check_dimensions(own_channel, interferer_channels);

    LsEstimate est;
    est.owner_bs = owner_bs;
    est.block_index = block_index;
    est.vector = own_channel;
    for (const auto &h : interferer_channels)
        est.vector += h;

    const double nv = pilot.noise_variance();
    if (nv > 0.0)
        est.vector += complex_normal_vector(rng, own_channel.n_elem, nv);
    return est;
}

uavpdc::LsEstimate uavpdc::ls_estimate_from_received(const ChannelVector &own_channel,
                                                     std::span<const ChannelVector> interferer_channels,
                                                     const PilotConfig &pilot, Rng &rng, int owner_bs, int block_index)
{
    pilot.validate();
    check_dimensions(own_channel, interferer_channels);
    const double tau_real = pilot.length;
    if (std::floor(tau_real) != tau_real)
        throw std::invalid_argument("Materialized training needs an integer pilot length.");
    const arma::uword tau = (arma::uword)tau_real;
    const arma::uword M = own_channel.n_elem;

    // Unit-norm pilot with unit-modulus chips: psi_t = exp(j*2*pi*t^2/(2*tau)) / sqrt(tau)
    arma::cx_vec psi(tau);
    for (arma::uword t = 0; t < tau; ++t)
        psi(t) = std::polar(1.0 / std::sqrt(tau_real), std::numbers::pi * double(t * t) / tau_real);

    ChannelVector sum = own_channel;
    for (const auto &h : interferer_channels)
        sum += h;

    const double gain = pilot.processing_gain();
    const bool noiseless = std::isinf(gain);
    // With infinite gain the signal term dominates; work in units where sqrt(tau*p_p) = 1.
    const double amplitude = noiseless ? 1.0 : std::sqrt(gain);

    arma::cx_mat Y = amplitude * sum * psi.st();
    if (!noiseless)
        for (arma::uword t = 0; t < tau; ++t)
            Y.col(t) += complex_normal_vector(rng, M, 1.0);

    LsEstimate est;
    est.owner_bs = owner_bs;
    est.block_index = block_index;
    est.vector = Y * arma::conj(psi) / amplitude;
    return est;
}

double uavpdc::estimate_norm_sq_asymptote(double beta_own, std::span<const double> interferer_betas,
                                          const PilotConfig &pilot)
{
    if (!(beta_own > 0.0))
        throw std::invalid_argument("Own large-scale gain must be positive.");
    double eta2 = beta_own + pilot.noise_variance();
    for (double b : interferer_betas)
    {
        if (!(b > 0.0))
            throw std::invalid_argument("Interferer large-scale gains must be positive.");
        eta2 += b;
    }
    return eta2;
}
