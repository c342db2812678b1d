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

#include "uavpdc/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

uavpdc::ArrayGeometry uavpdc::ArrayGeometry::half_wavelength(arma::uword num_antennas, double wavelength)
{
    ArrayGeometry a;
    a.num_antennas = num_antennas;
    a.wavelength = wavelength;
    a.radius = (double)num_antennas * wavelength / (4.0 * std::numbers::pi);
    return a;
}

double uavpdc::ArrayGeometry::wavenumber_radius() const
{
    return 2.0 * std::numbers::pi * radius / wavelength;
}

void uavpdc::ArrayGeometry::validate() const
{
    if (num_antennas < 2)
        throw std::invalid_argument("Array needs at least 2 antennas.");
    if (!(radius > 0.0))
        throw std::invalid_argument("Array radius must be positive.");
    if (!(wavelength > 0.0))
        throw std::invalid_argument("Wavelength must be positive.");
}

uavpdc::ChannelVector uavpdc::steering_vector(const ArrayGeometry &array, const Aoa &aoa)
{
    const arma::uword M = array.num_antennas;
    const double kr = array.wavenumber_radius() * std::sin(aoa.theta);
    const double step = 2.0 * std::numbers::pi / (double)M;

    ChannelVector a(M);
    for (arma::uword m = 0; m < M; ++m)
        a(m) = std::polar(1.0, -kr * std::cos(aoa.phi - step * (double)m));
    return a;
}

double uavpdc::PathLossModel::free_space_ref_gain_db(double wavelength, double ref_distance)
{
    const double g = wavelength / (4.0 * std::numbers::pi * ref_distance);
    return 20.0 * std::log10(g);
}

uavpdc::LargeScaleFading uavpdc::path_loss(double distance, LinkType link_type, const PathLossModel &model)
{
    if (!(model.ref_distance > 0.0))
        throw std::invalid_argument("Reference distance must be positive.");
    if (distance < model.ref_distance)
        throw std::invalid_argument("Link distance is below the path-loss reference distance.");

    const double exponent = link_type == LinkType::LoS ? model.exponent_los : model.exponent_nlos;
    const double beta = from_db(model.ref_gain_db) * std::pow(distance / model.ref_distance, -exponent);
    return {beta, link_type};
}

uavpdc::LargeScaleFading uavpdc::path_loss(double distance, LinkType link_type, const PathLossModel &model, Rng &rng)
{
    LargeScaleFading f = path_loss(distance, link_type, model);
    if (link_type == LinkType::NLoS && model.shadowing_nlos_db > 0.0)
    {
        std::normal_distribution<double> nd(0.0, model.shadowing_nlos_db);
        f.beta *= from_db(nd(rng));
    }
    return f;
}

uavpdc::ChannelVector uavpdc::los_channel(const ArrayGeometry &array, double beta, const Aoa &aoa, double phase)
{
    if (!(beta > 0.0))
        throw std::invalid_argument("Large-scale gain must be positive.");
    return std::polar(std::sqrt(beta), phase) * steering_vector(array, aoa);
}

uavpdc::ChannelVector uavpdc::gen_uav_channel(const ArrayGeometry &array, double beta, const Aoa &aoa, Rng &rng)
{
    const double phase = uniform(rng, 0.0, 2.0 * std::numbers::pi);
    return los_channel(array, beta, aoa, phase);
}

uavpdc::ChannelVector uavpdc::gen_gue_channel(arma::uword num_antennas, double beta, Rng &rng)
{
    if (!(beta > 0.0))
        throw std::invalid_argument("Large-scale gain must be positive.");
    return complex_normal_vector(rng, num_antennas, beta);
}
