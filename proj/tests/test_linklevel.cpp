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
#include "uavpdc/linklevel.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

using namespace uavpdc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Uplink SINR with perfect CSI", "[linklevel]")
{
    const ArrayGeometry a = ArrayGeometry::half_wavelength(64, 0.15);
    Rng rng = substream(30, 0);
    const double beta = 0.4;
    const PowerBudget budget{25.0, 50.0};
    const ChannelVector h = gen_uav_channel(a, beta, {0.5, 0.9}, rng);
    CHECK_THAT(uplink_sinr(h, h, {}, budget), WithinRel(25.0 * beta, 1e-12));
    CHECK_THAT(downlink_sinr_gue(h, h, budget), WithinRel(50.0 * beta, 1e-12));
}

TEST_CASE("SINR is invariant to estimate scaling", "[linklevel]")
{
    Rng rng = substream(31, 0);
    const ChannelVector h = gen_gue_channel(32, 1.0, rng);
    const ChannelVector est = h + complex_normal_vector(rng, 32, 0.3);
    const std::vector<ChannelVector> intf{gen_gue_channel(32, 0.5, rng)};
    const PowerBudget budget{10.0, 10.0};
    const double s = uplink_sinr(est, h, intf, budget);
    CHECK_THAT(uplink_sinr(std::complex<double>(-3.0, 2.0) * est, h, intf, budget), WithinRel(s, 1e-12));
    CHECK_THAT(downlink_sinr_gue(h, 7.0 * est, budget), WithinRel(downlink_sinr_gue(h, est, budget), 1e-12));
}

TEST_CASE("Uplink and downlink agree without interference", "[linklevel]")
{
    Rng rng = substream(32, 0);
    const ChannelVector h = gen_gue_channel(32, 1.0, rng);
    const ChannelVector est = h + complex_normal_vector(rng, 32, 0.3);
    const PowerBudget budget{10.0, 10.0};
    const std::vector<ChannelVector> chans{h}, precoders{est};
    CHECK_THAT(uplink_sinr(est, h, {}, budget), WithinRel(downlink_sinr_gue(h, est, budget), 1e-12));
    CHECK_THAT(downlink_sinr_uav(chans, precoders, 0, budget), WithinRel(downlink_sinr_gue(h, est, budget), 1e-12));
}

TEST_CASE("Downlink UAV SINR against a hand formula", "[linklevel]")
{
    Rng rng = substream(33, 0);
    std::vector<ChannelVector> chans, precoders;
    for (int l = 0; l < 3; ++l)
    {
        chans.push_back(gen_gue_channel(16, 1.0 + l, rng));
        precoders.push_back(gen_gue_channel(16, 1.0, rng));
    }
    const PowerBudget budget{1.0, 5.0};
    auto term = [&](std::size_t l)
    {
        const double eta2 = std::pow(arma::norm(precoders[l]), 2.0) / 16.0;
        return 5.0 / eta2 * std::norm(arma::cdot(chans[l], precoders[l]) / 16.0);
    };
    const double expected = term(1) / (term(0) + term(2) + 1.0);
    CHECK_THAT(downlink_sinr_uav(chans, precoders, 1, budget), WithinRel(expected, 1e-12));
    CHECK_THAT(downlink_sinr_gue_with_interference(chans, precoders, 1, budget), WithinRel(expected, 1e-12));
    CHECK_THROWS_AS(downlink_sinr_uav(chans, precoders, 3, budget), std::invalid_argument);
}

TEST_CASE("Single-cell downlink", "[linklevel]")
{
    const ArrayGeometry a = ArrayGeometry::half_wavelength(64, 0.15);
    Rng rng = substream(34, 0);
    const ChannelVector h = gen_uav_channel(a, 2.0, {0.2, 0.1}, rng);
    const std::vector<ChannelVector> one{h};
    CHECK_THAT(downlink_sinr_uav(one, one, 0, PowerBudget{1.0, 8.0}), WithinRel(16.0, 1e-12));
}

TEST_CASE("Link-level preconditions", "[linklevel]")
{
    const ChannelVector z(8, arma::fill::zeros), h(8, arma::fill::ones);
    const PowerBudget budget{1.0, 1.0};
    CHECK_THROWS_AS(uplink_sinr(z, h, {}, budget), std::invalid_argument);
    CHECK_THROWS_AS(downlink_sinr_gue(h, z, budget), std::invalid_argument);
    CHECK_THROWS_AS(uplink_sinr(h, h, {}, PowerBudget{0.0, 1.0}), std::invalid_argument);
    CHECK_THROWS_AS(uplink_sinr(h, ChannelVector(4, arma::fill::ones), {}, budget), std::invalid_argument);
}

TEST_CASE("Closed-form asymptotes", "[linklevel]")
{
    const PowerBudget budget{10.0, 10.0};
    const PilotConfig pilot{1.0, 10.0};

    AsymptoticInputs in;
    in.beta_own = 1.0;
    in.interferer_betas = {1.0, 1.0};
    in.own_eta2 = 2.0 + pilot.noise_variance();
    const double eta2 = 2.1;
    const double expected = (10.0 / eta2) / (2.0 * 10.0 / eta2 + 1.0);
    CHECK_THAT(asymptotic_sinr(Scheme::Before, LinkDirection::Uplink, UserKind::Uav, in, budget, pilot),
               WithinRel(expected, 1e-12));

    AsymptoticInputs clean;
    clean.beta_own = 1.0;
    CHECK_THAT(asymptotic_sinr(Scheme::After, LinkDirection::Uplink, UserKind::Gue, clean, budget,
                               PilotConfig::noiseless()),
               WithinRel(10.0, 1e-12));
    CHECK_THAT(asymptotic_sinr(Scheme::TrueCsi, LinkDirection::Downlink, UserKind::Uav, clean, PowerBudget{1.0, 3.0},
                               pilot),
               WithinRel(3.0, 1e-12));

    AsymptoticInputs dl;
    dl.beta_own = 1.0;
    dl.interferer_betas.assign(8, 1.0);
    dl.interferer_eta2.assign(8, 3.0);
    dl.own_eta2 = 3.0;
    const double sinr = asymptotic_sinr(Scheme::Before, LinkDirection::Downlink, UserKind::Uav, dl,
                                        PowerBudget{1.0, 1e9}, pilot);
    CHECK_THAT(sinr, WithinRel(1.0 / 8.0, 1e-6));

    AsymptoticInputs missing = dl;
    missing.interferer_eta2.pop_back();
    CHECK_THROWS_AS(asymptotic_sinr(Scheme::Before, LinkDirection::Downlink, UserKind::Uav, missing, budget, pilot),
                    std::invalid_argument);
}

TEST_CASE("High-SNR equal-gain table", "[linklevel]")
{
    const PowerBudget budget{10.0, 30.0};
    CHECK_THAT(*table1_high_snr(UserKind::Uav, LinkDirection::Uplink, Scheme::Before, 9, 3, 1.0, budget),
               WithinRel(0.5, 1e-15));
    CHECK_THAT(*table1_high_snr(UserKind::Uav, LinkDirection::Downlink, Scheme::Before, 9, 3, 1.0, budget),
               WithinRel(0.125, 1e-15));
    CHECK_THAT(*table1_high_snr(UserKind::Gue, LinkDirection::Uplink, Scheme::After, 9, 3, 2.0, budget),
               WithinRel(20.0, 1e-15));
    CHECK_THAT(*table1_high_snr(UserKind::Gue, LinkDirection::Uplink, Scheme::Before, 9, 3, 1.0, budget),
               WithinRel(1.0 / 3.0, 1e-15));
    CHECK_THAT(*table1_high_snr(UserKind::Gue, LinkDirection::Downlink, Scheme::Before, 9, 3, 1.0, budget),
               WithinRel(30.0 / 4.0, 1e-15));
    CHECK_FALSE(table1_high_snr(UserKind::Uav, LinkDirection::Uplink, Scheme::Before, 9, 1, 1.0, budget).has_value());
    CHECK_THROWS_AS(table1_high_snr(UserKind::Uav, LinkDirection::Uplink, Scheme::Before, 9, 9, 1.0, budget),
                    std::invalid_argument);
}
