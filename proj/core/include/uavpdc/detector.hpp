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

#include "uavpdc/channel.hpp"
#include "uavpdc/types.hpp"

#include <complex>
#include <cstddef>
#include <memory>
#include <ostream>
#include <vector>

namespace uavpdc
{
    /// Search grid over the above-BS hemisphere.
    ///   theta_i = i*pi/(2*n_theta),      i = 0..n_theta-1   (covers [0, pi/2))
    ///   phi_j   = -pi + 2*pi*j/n_phi,    j = 0..n_phi-1     (covers [-pi, pi))
    struct AngularGrid
    {
        std::size_t n_theta = 64;
        std::size_t n_phi = 256;

        double theta(std::size_t i) const;
        double phi(std::size_t j) const;
        double theta_step() const;
        double phi_step() const;
        std::size_t num_cells() const { return n_theta * n_phi; }
        Aoa cell(std::size_t i, std::size_t j) const { return {theta(i), phi(j)}; }

        void validate() const;
    };

    /// Narrowest 3-dB (half-power) full beamwidths of the array over the upper hemisphere:
    /// elevation measured at the zenith, azimuth at the horizon.
    struct Beamwidths
    {
        double elevation = 0.0;
        double azimuth = 0.0;
    };

    Beamwidths array_beamwidths(const ArrayGeometry &array);

    /// True when both grid steps are strictly finer than the corresponding beamwidths.
    bool grid_resolves_beams(const AngularGrid &grid, const ArrayGeometry &array);

    enum class SpectrumRoute
    {
        Auto,   // FFT when the azimuth grid is rotation-compatible with the array, else Direct
        Direct, // precomputed steering table, one inner product per cell
        Fft     // circular correlation per (theta, azimuth offset); needs n_phi % M == 0
    };

    /// Matched-filter bank for one (array, grid) pair. Immutable after construction and
    /// safe to share across threads.
    class MatchedFilterBank
    {
    public:
        MatchedFilterBank(const ArrayGeometry &array, const AngularGrid &grid, SpectrumRoute route = SpectrumRoute::Auto);
        ~MatchedFilterBank();
        MatchedFilterBank(MatchedFilterBank &&) noexcept;
        MatchedFilterBank &operator=(MatchedFilterBank &&) noexcept;
        MatchedFilterBank(const MatchedFilterBank &) = delete;
        MatchedFilterBank &operator=(const MatchedFilterBank &) = delete;

        const ArrayGeometry &array() const;
        const AngularGrid &grid() const;
        bool uses_fft() const;

        /// a^H(theta_i, phi_j) * estimate for every cell, as an n_theta x n_phi matrix.
        arma::cx_mat correlate(const ChannelVector &estimate) const;

        /// Steering vector of grid cell (i, j).
        ChannelVector steering(std::size_t i, std::size_t j) const;

        /// True when the bank keeps the rotation table used by subtract_component.
        bool supports_incremental_update() const;

        /// Turns the correlation of some vector x into the correlation of x - gain * a(i, j)
        /// without touching x, using the rotation symmetry of the UCA on an n_phi = s*M grid.
        void subtract_component(arma::cx_mat &correlation, std::size_t i, std::size_t j,
                                std::complex<double> gain) const;

    private:
        struct Impl;
        std::unique_ptr<Impl> impl_;
    };

    /// T(i, j) = |a^H(theta_i, phi_j) * estimate|^2 / M.
    arma::mat matched_filter_spectrum(const ChannelVector &estimate, const MatchedFilterBank &bank);

    /// zeta = kappa * mean(spectrum).
    double detection_threshold(const arma::mat &spectrum, double kappa);

    /// Least-squares gain mu = a^H * estimate / M of a unit-modulus steering vector.
    std::complex<double> fit_los_gain(const ChannelVector &estimate, const ChannelVector &steering);

    struct SpectrumPeak
    {
        std::size_t theta_index = 0;
        std::size_t phi_index = 0;
        double value = 0.0;
    };

    /// Largest cell; ties go to the lowest (theta_index, phi_index) in row-major order.
    SpectrumPeak spectrum_peak(const arma::mat &spectrum);

    /// One detected LoS path.
    struct LoSComponent
    {
        Aoa aoa;
        std::complex<double> gain; // mu
        double peak_value = 0.0;   // matched-filter output at detection
        std::size_t theta_index = 0;
        std::size_t phi_index = 0;

        /// mu * a(theta, phi)
        ChannelVector reconstruct(const ArrayGeometry &array) const;
    };

    struct DetectorConfig
    {
        double kappa = 3.0;
        std::size_t max_iterations = 18;
    };

    struct DetectionOutcome
    {
        std::vector<LoSComponent> components; // detection order
        ChannelVector residual;               // estimate with every component removed
        bool truncated = false;               // hit max_iterations with a peak still above threshold

        std::size_t count() const { return components.size(); }
    };

    /// Repeatedly find the strongest grid cell of the residual spectrum; while it exceeds
    /// kappa times the spectrum mean (strictly), fit its gain and subtract mu*a from the residual.
    DetectionOutcome successive_detection(const ChannelVector &estimate, const MatchedFilterBank &bank,
                                          const DetectorConfig &config);

    /// CSV dump (theta,phi,T) of one spectrum.
    void write_spectrum_csv(std::ostream &out, const arma::mat &spectrum, const AngularGrid &grid);

} // namespace uavpdc
