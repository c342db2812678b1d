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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <numbers>

using namespace uavpdc;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{
    const double pi = std::numbers::pi;
    const std::complex<double> j(0.0, 1.0);
} // namespace

TEST_CASE("Steering vector at the zenith is all ones", "[channel]")
{
    const ArrayGeometry a = ArrayGeometry::half_wavelength(16, 0.15);
    for (double phi : {-3.0, 0.0, 1.2})
    {
        const ChannelVector v = steering_vector(a, {0.0, phi});
        for (arma::uword m = 0; m < v.n_elem; ++m)
            CHECK(std::abs(v(m) - 1.0) < 1e-15);
    }
}

TEST_CASE("Steering vector of a four-element ring", "[channel]")
{
    ArrayGeometry a;
    a.num_antennas = 4;
    a.wavelength = 1.0;
    a.radius = 0.5;
    const ChannelVector v = steering_vector(a, {pi / 2.0, 0.0});
    // element angles 0, pi/2, pi, 3pi/2 ; 2*pi*d/lambda = pi
    CHECK(std::abs(v(0) - std::exp(-j * pi)) < 1e-12);
    CHECK(std::abs(v(1) - 1.0) < 1e-12);
    CHECK(std::abs(v(2) - std::exp(j * pi)) < 1e-12);
    CHECK(std::abs(v(3) - 1.0) < 1e-12);
}

TEST_CASE("Steering vector energy and element phases", "[channel]")
{
    const ArrayGeometry a = ArrayGeometry::half_wavelength(128, 0.15);
    Rng rng = substream(7, 0);
    for (int t = 0; t < 20; ++t)
    {
        const Aoa aoa{uniform(rng, 0.0, pi / 2.0), uniform(rng, -pi, pi)};
        const ChannelVector v = steering_vector(a, aoa);
        CHECK_THAT(std::real(arma::cdot(v, v)), WithinRel(128.0, 1e-12));
        const double kr = 2.0 * pi * a.radius / a.wavelength;
        const arma::uword m = (arma::uword)t % 128;
        const std::complex<double> expected =
            std::exp(-j * kr * std::sin(aoa.theta) * std::cos(aoa.phi - 2.0 * pi * (double)m / 128.0));
        CHECK(std::abs(v(m) - expected) < 1e-10);
    }
}

TEST_CASE("Half-wavelength ring radius", "[channel]")
{
    const ArrayGeometry a = ArrayGeometry::half_wavelength(128, 0.15);
    CHECK_THAT(a.radius, WithinRel(128.0 * 0.15 / (4.0 * pi), 1e-12));
    // arc length between neighbours
    CHECK_THAT(a.radius * 2.0 * pi / 128.0, WithinRel(0.075, 1e-12));
    ArrayGeometry bad = a;
    bad.num_antennas = 1;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("Log-distance path loss", "[channel]")
{
    PathLossModel m;
    const double pl0 = std::pow(10.0, m.ref_gain_db / 10.0);
    CHECK_THAT(path_loss(m.ref_distance, LinkType::LoS, m).beta, WithinRel(pl0, 1e-12));
    CHECK_THAT(path_loss(10.0 * m.ref_distance, LinkType::LoS, m).beta, WithinRel(pl0 * std::pow(10.0, -2.2), 1e-12));
    CHECK(path_loss(300.0, LinkType::NLoS, m).beta < path_loss(300.0, LinkType::LoS, m).beta);
    CHECK_THROWS_AS(path_loss(0.5, LinkType::LoS, m), std::invalid_argument);

    const double lambda = speed_of_light / 2e9;
    CHECK_THAT(PathLossModel::free_space_ref_gain_db(lambda, 1.0),
               WithinAbs(10.0 * std::log10(std::pow(lambda / (4.0 * pi), 2.0)), 1e-12));
    CHECK_THAT(PathLossModel::free_space_ref_gain_db(lambda, 1.0), WithinAbs(-38.46, 0.02));
}

TEST_CASE("NLoS shadowing spread", "[channel]")
{
    PathLossModel m;
    Rng rng = substream(11, 0);
    const double mean_beta = path_loss(200.0, LinkType::NLoS, m).beta;
    double s = 0.0, s2 = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i)
    {
        const double db = 10.0 * std::log10(path_loss(200.0, LinkType::NLoS, m, rng).beta / mean_beta);
        s += db;
        s2 += db * db;
    }
    const double mean = s / n, sd = std::sqrt(s2 / n - mean * mean);
    CHECK_THAT(mean, WithinAbs(0.0, 0.25));
    CHECK_THAT(sd, WithinAbs(8.0, 0.2));
    // LoS links carry no shadowing
    CHECK(path_loss(200.0, LinkType::LoS, m, rng).beta == path_loss(200.0, LinkType::LoS, m).beta);
}

TEST_CASE("UAV LoS channel", "[channel]")
{
    const ArrayGeometry a = ArrayGeometry::half_wavelength(64, 0.15);
    Rng r1 = substream(5, 3), r2 = substream(5, 3);
    const Aoa aoa{0.7, -1.1};
    const ChannelVector h1 = gen_uav_channel(a, 2.5, aoa, r1);
    const ChannelVector h2 = gen_uav_channel(a, 2.5, aoa, r2);
    CHECK_THAT(std::real(arma::cdot(h1, h1)), WithinRel(2.5 * 64.0, 1e-12));
    for (arma::uword m = 0; m < h1.n_elem; ++m)
        CHECK_THAT(std::norm(h1(m)), WithinRel(2.5, 1e-12));
    CHECK(arma::approx_equal(h1, h2, "absdiff", 0.0));
    // a phase-rotated, scaled steering vector
    const ChannelVector a0 = steering_vector(a, aoa);
    CHECK_THAT(std::abs(arma::cdot(a0, h1)) / 64.0, WithinRel(std::sqrt(2.5), 1e-12));
}

TEST_CASE("GUE Rayleigh channel statistics", "[channel]")
{
    const double beta = 3.0;
    const arma::uword M = 8;
    Rng rng = substream(21, 0);
    const int n = 100000;
    double energy = 0.0;
    arma::cx_mat cov(M, M, arma::fill::zeros);
    for (int i = 0; i < n; ++i)
    {
        const ChannelVector h = gen_gue_channel(M, beta, rng);
        energy += std::real(arma::cdot(h, h)) / (double)M;
        cov += h * h.t();
    }
    CHECK_THAT(energy / n, WithinRel(beta, 0.01));
    cov /= (double)n;
    for (arma::uword a = 0; a < M; ++a)
        for (arma::uword b = 0; b < M; ++b)
            CHECK(std::abs(cov(a, b) - (a == b ? beta : 0.0)) < 0.05 * beta);
    CHECK_THROWS_AS(gen_gue_channel(M, 0.0, rng), std::invalid_argument);
}
