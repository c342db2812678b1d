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
#include "uavpdc/training.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <vector>

using namespace uavpdc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("Noiseless estimate without interferers is the channel", "[training]")
{
    Rng rng = substream(1, 0);
    const ChannelVector h = gen_gue_channel(32, 2.0, rng);
    const LsEstimate e = ls_estimate(h, {}, PilotConfig::noiseless(), rng, 4, 1);
    CHECK(arma::approx_equal(e.vector, h, "absdiff", 0.0));
    CHECK(e.owner_bs == 4);
    CHECK(e.block_index == 1);

    const LsEstimate r = ls_estimate_from_received(h, {}, PilotConfig::noiseless(), rng);
    CHECK(arma::approx_equal(r.vector, h, "absdiff", 1e-12));
}

TEST_CASE("Estimation noise variance", "[training]")
{
    const PilotConfig pilot{4.0, 2.5};
    CHECK_THAT(pilot.noise_variance(), WithinRel(0.1, 1e-12));
    Rng rng = substream(2, 0);
    const ChannelVector zero(64, arma::fill::zeros);
    double s = 0.0;
    std::size_t count = 0;
    while (count < 100000)
    {
        const ChannelVector v = ls_estimate(zero, {}, pilot, rng).vector;
        s += arma::accu(arma::square(arma::abs(v)));
        count += v.n_elem;
    }
    CHECK_THAT(s / (double)count, WithinRel(0.1, 0.01));

    s = 0.0;
    count = 0;
    while (count < 100000)
    {
        const ChannelVector v = ls_estimate_from_received(zero, {}, pilot, rng).vector;
        s += arma::accu(arma::square(arma::abs(v)));
        count += v.n_elem;
    }
    CHECK_THAT(s / (double)count, WithinRel(0.1, 0.01));
}

TEST_CASE("Estimate is own channel plus interferers plus noise", "[training]")
{
    const ArrayGeometry a = ArrayGeometry::half_wavelength(64, 0.15);
    const PilotConfig pilot{9.0, 10.0};
    const double beta = 0.7;
    const std::complex<double> alpha = std::polar(1.0, 0.9);

    Rng rng = substream(3, 0);
    const ChannelVector h = gen_gue_channel(64, 1.0, rng);
    const ChannelVector g = std::sqrt(beta) * alpha * steering_vector(a, {0.4, 1.3});
    const std::vector<ChannelVector> interferers{g};

    Rng r1 = substream(3, 1);
    const ChannelVector est = ls_estimate(h, interferers, pilot, r1).vector;
    Rng r2 = substream(3, 1);
    const ChannelVector noise = complex_normal_vector(r2, 64, pilot.noise_variance());

    const ChannelVector recovered = est - h - noise;
    CHECK(arma::norm(recovered - g) < 1e-12);
}

TEST_CASE("Materialized training recovers a sum of channels", "[training]")
{
    Rng rng = substream(4, 0);
    const ChannelVector h = gen_gue_channel(16, 1.0, rng);
    const std::vector<ChannelVector> intf{gen_gue_channel(16, 0.5, rng), gen_gue_channel(16, 0.2, rng)};
    const LsEstimate e = ls_estimate_from_received(h, intf, PilotConfig::noiseless(), rng);
    CHECK(arma::norm(e.vector - (h + intf[0] + intf[1])) < 1e-12);
    CHECK_THROWS_AS(ls_estimate_from_received(h, intf, PilotConfig{2.5, 1.0}, rng), std::invalid_argument);
}

TEST_CASE("Estimate energy asymptote", "[training]")
{
    CHECK_THAT(estimate_norm_sq_asymptote(1.0, {}, PilotConfig::noiseless()), WithinAbs(1.0, 1e-15));
    const std::vector<double> two{1.0, 1.0};
    CHECK_THAT(estimate_norm_sq_asymptote(1.0, two, PilotConfig{1.0, 10.0}), WithinRel(3.1, 1e-12));
    CHECK_THROWS_AS(estimate_norm_sq_asymptote(0.0, two, PilotConfig{1.0, 10.0}), std::invalid_argument);
}

TEST_CASE("Estimate energy concentrates at large M", "[training]")
{
    const arma::uword M = 4096;
    const ArrayGeometry a = ArrayGeometry::half_wavelength(M, 0.15);
    const PilotConfig pilot{1.0, 10.0};
    const std::vector<double> betas{1.0, 1.0};
    const double eta2 = estimate_norm_sq_asymptote(1.0, betas, pilot);

    Rng rng = substream(5, 0);
    int within = 0;
    const int trials = 500;
    for (int t = 0; t < trials; ++t)
    {
        const ChannelVector h = gen_uav_channel(a, 1.0, {uniform(rng, 0.0, 1.5), uniform(rng, -3.1, 3.1)}, rng);
        std::vector<ChannelVector> intf;
        for (double b : betas)
            intf.push_back(gen_uav_channel(a, b, {uniform(rng, 0.0, 1.5), uniform(rng, -3.1, 3.1)}, rng));
        const ChannelVector e = ls_estimate(h, intf, pilot, rng).vector;
        const double ratio = std::real(arma::cdot(e, e)) / (double)M / eta2;
        within += std::abs(ratio - 1.0) <= 0.05 ? 1 : 0;
    }
    CHECK((double)within / trials >= 0.99);
}

TEST_CASE("Training preconditions", "[training]")
{
    Rng rng = substream(6, 0);
    const ChannelVector h(8, arma::fill::ones);
    const std::vector<ChannelVector> wrong{ChannelVector(4, arma::fill::ones)};
    CHECK_THROWS_AS(ls_estimate(h, wrong, PilotConfig{1.0, 1.0}, rng), std::invalid_argument);
    CHECK_THROWS_AS(ls_estimate(h, {}, PilotConfig{0.5, 1.0}, rng), std::invalid_argument);
    CHECK_THROWS_AS(ls_estimate(h, {}, PilotConfig{1.0, 0.0}, rng), std::invalid_argument);
}
