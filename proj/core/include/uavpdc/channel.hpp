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

#include <complex>

namespace uavpdc
{
    /// Uniform circular array of M isotropic elements on a circle of radius d.
    /// Element m (0-based) sits at angle gamma_m = 2*pi*m/M.
    struct ArrayGeometry
    {
        arma::uword num_antennas = 128;
        double radius = 0.0;     // d [m]
        double wavelength = 0.0; // lambda [m]

        /// Radius M*lambda/(4*pi): adjacent elements are half a wavelength apart along the circumference.
        static ArrayGeometry half_wavelength(arma::uword num_antennas, double wavelength);

        /// 2*pi*d/lambda
        double wavenumber_radius() const;

        /// Throws std::invalid_argument unless M >= 2, d > 0 and lambda > 0.
        void validate() const;
    };

    constexpr double speed_of_light = 299792458.0;

    /// UCA response a(theta, phi): element m equals exp(-j*(2*pi*d/lambda)*sin(theta)*cos(phi - gamma_m)).
    ChannelVector steering_vector(const ArrayGeometry &array, const Aoa &aoa);

    enum class LinkType
    {
        LoS,
        NLoS
    };

    struct LargeScaleFading
    {
        double beta = 0.0; // linear power gain
        LinkType link_type = LinkType::LoS;
    };

    /// Log-distance law beta = ref_gain * (distance / ref_distance)^(-exponent),
    /// with optional log-normal shadowing on NLoS links.
    struct PathLossModel
    {
        double ref_distance = 1.0;       // d0 [m]
        double ref_gain_db = -38.46;     // PL0, free space at 1 m and 2 GHz
        double exponent_los = 2.2;
        double exponent_nlos = 3.7;
        double shadowing_nlos_db = 8.0;  // log-normal standard deviation

        /// Free-space gain (lambda / (4*pi*d0))^2 in dB.
        static double free_space_ref_gain_db(double wavelength, double ref_distance);
    };

    /// Deterministic (shadowing-free) large-scale gain.
    LargeScaleFading path_loss(double distance, LinkType link_type, const PathLossModel &model);

    /// Same, plus a log-normal shadowing draw on NLoS links.
    LargeScaleFading path_loss(double distance, LinkType link_type, const PathLossModel &model, Rng &rng);

    /// LoS channel sqrt(beta) * exp(j*phase) * a(theta, phi).
    ChannelVector los_channel(const ArrayGeometry &array, double beta, const Aoa &aoa, double phase);

    /// LoS UAV-BS channel with a uniformly drawn phase rotation; squared norm is beta * M.
    ChannelVector gen_uav_channel(const ArrayGeometry &array, double beta, const Aoa &aoa, Rng &rng);

    /// Rayleigh GUE-BS channel, entries i.i.d. CN(0, beta).
    ChannelVector gen_gue_channel(arma::uword num_antennas, double beta, Rng &rng);

} // namespace uavpdc
