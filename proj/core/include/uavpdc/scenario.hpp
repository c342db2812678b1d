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
#include "uavpdc/detector.hpp"
#include "uavpdc/linklevel.hpp"
#include "uavpdc/pdc.hpp"
#include "uavpdc/topology.hpp"
#include "uavpdc/training.hpp"

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace uavpdc
{
    struct ArrayParams
    {
        arma::uword num_antennas = 128;
        double carrier_hz = 2e9;
        std::optional<double> radius; // unset: half-wavelength spacing along the circle
    };

    struct PathLossParams
    {
        double ref_distance = 1.0;
        std::optional<double> ref_gain_db; // unset: free space at ref_distance and the carrier
        double exponent_los = 2.2;
        double exponent_nlos = 3.7;
        double shadowing_nlos_db = 8.0;
    };

    struct PowerParams
    {
        double user_dbm = 23.0;
        double bs_dbm = 46.0;
        double noise_density_dbm_hz = -164.0; // includes the receiver noise figure
        double bandwidth_hz = 10e6;
    };

    struct PilotParams
    {
        std::optional<double> length;           // tau; unset: K
        std::optional<double> processing_gain;  // tau * p_p override; unset: tau * P_user / N
    };

    struct DetectorParams
    {
        double kappa = 3.0;
        std::size_t n_theta = 64;
        std::size_t n_phi = 256;
        std::optional<std::size_t> max_iterations; // unset: 2K
        SpectrumRoute route = SpectrumRoute::Auto;
    };

    struct PdcParams
    {
        double epsilon_rel = 0.15;
        double persistence = 0.0; // probability that an interfering UAV keeps the pilot in the second block
    };

    /// Complete description of one Monte Carlo experiment.
    struct ScenarioConfig
    {
        LayoutParams layout;
        int num_uavs = 3;
        ArrayParams array;
        PathLossParams pathloss;
        PowerParams power;
        PilotParams pilot;
        DetectorParams detector;
        PdcParams pdc;
        std::uint64_t trials = 10000;
        std::uint64_t seed = 1;
        unsigned workers = 1;
        std::vector<Scheme> schemes{Scheme::Before, Scheme::After, Scheme::Perfect, Scheme::TrueCsi};
        bool gue_pilot_interference = false;
        bool gue_downlink_interference = false;

        void validate() const;
        bool has_scheme(Scheme s) const;
    };

    /// Numbers of the reference network: 9 co-pilot cells with reuse 7, 500 m cells, 25 m BSs,
    /// UAVs at U[25, 300] m, GUEs at 1.5 m, 128-element UCA, 23/46 dBm, -164 dBm/Hz, 10 MHz, kappa = 3.
    ScenarioConfig reference_scenario();

    /// Physical powers mapped to the noise-normalized model.
    struct NormalizedBudget
    {
        double noise_watts = 0.0;    // density * bandwidth
        double user_snr = 0.0;       // P_user / N  (= p_u, p_p)
        double bs_snr = 0.0;         // P_BS / N    (= p_d)
        double uplink_energy = 0.0;  // E_u = M * p_u
        double downlink_energy = 0.0;// E_d = M * p_d
        double pilot_gain = 0.0;     // tau * p_p
    };

    double dbm_to_watts(double dbm);

    NormalizedBudget link_budget_normalize(const ScenarioConfig &config);

    /// Everything a trial needs, derived once per run. Shared read-only by workers.
    struct ScenarioContext
    {
        ScenarioConfig config;
        NetworkLayout base_layout;
        ArrayGeometry array;
        PathLossModel pathloss;
        NormalizedBudget normalized;
        PowerBudget budget;
        PilotConfig pilot;
        DetectorConfig detector;
        MatchTolerance tolerance;
        std::shared_ptr<const MatchedFilterBank> bank;
    };

    ScenarioContext make_context(const ScenarioConfig &config);

    // Structured (JSON) configuration, keys mirror the struct field names.
    ScenarioConfig load_config(const std::filesystem::path &path);
    ScenarioConfig config_from_json_text(const std::string &text);
    std::string config_to_json_text(const ScenarioConfig &config);

} // namespace uavpdc
