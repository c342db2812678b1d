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

#include "uavpdc/pdc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace
{
    constexpr double rank_tolerance = 1e-8;

    // Orthonormal basis of range(A) via thin QR; throws when A is numerically rank deficient.
    arma::cx_mat range_basis(const arma::cx_mat &A)
    {
        arma::cx_mat Q, R;
        if (!arma::qr_econ(Q, R, A))
            throw std::runtime_error("QR factorization of the interferer steering matrix failed.");
        const arma::vec d = arma::abs(R.diag());
        const double scale = d.max();
        for (arma::uword i = 0; i < d.n_elem; ++i)
            if (!(d(i) > rank_tolerance * scale))
                throw std::invalid_argument("Interferer steering matrix is rank deficient (duplicate AoAs?).");
        return Q;
    }
} // namespace

namespace
{
    double distance_from_overlap(std::complex<double> g1, std::complex<double> g2, double overlap, double M)
    {
        const double n1 = std::norm(g1) * M;
        const double n2 = std::norm(g2) * M;
        const double largest = std::max(n1, n2);
        if (largest == 0.0)
            return 0.0;
        const double cross = std::abs(g1) * std::abs(g2) * overlap;
        return std::sqrt(std::max(0.0, n1 + n2 - 2.0 * cross)) / std::sqrt(largest);
    }
} // namespace

double uavpdc::component_distance(const LoSComponent &c1, const LoSComponent &c2, const ArrayGeometry &array)
{
    const double overlap = std::abs(arma::cdot(steering_vector(array, c1.aoa), steering_vector(array, c2.aoa)));
    return distance_from_overlap(c1.gain, c2.gain, overlap, (double)array.num_antennas);
}

uavpdc::DecontaminatedEstimate uavpdc::decontaminate_gue(const ChannelVector &estimate, const MatchedFilterBank &bank,
                                                         const DetectorConfig &config)
{
    DetectionOutcome det = successive_detection(estimate, bank, config);
    DecontaminatedEstimate out;
    out.vector = std::move(det.residual);
    out.removed = std::move(det.components);
    out.method = PdcMethod::GuePdc;
    out.truncated = det.truncated;
    return out;
}

std::vector<uavpdc::LoSComponent> uavpdc::match_components(std::span<const LoSComponent> first,
                                                           std::span<const LoSComponent> second,
                                                           const MatchTolerance &tol, const ArrayGeometry &array)
{
    if (!(tol.epsilon_rel > 0.0))
        throw std::invalid_argument("Match tolerance must be positive.");

    struct Pair
    {
        double distance;
        std::size_t i, j;
    };
    std::vector<ChannelVector> a1, a2;
    for (const LoSComponent &c : first)
        a1.push_back(steering_vector(array, c.aoa));
    for (const LoSComponent &c : second)
        a2.push_back(steering_vector(array, c.aoa));

    std::vector<Pair> pairs;
    for (std::size_t i = 0; i < first.size(); ++i)
        for (std::size_t j = 0; j < second.size(); ++j)
        {
            const double d = distance_from_overlap(first[i].gain, second[j].gain, std::abs(arma::cdot(a1[i], a2[j])),
                                                   (double)array.num_antennas);
            if (d < tol.epsilon_rel)
                pairs.push_back({d, i, j});
        }
    std::sort(pairs.begin(), pairs.end(), [](const Pair &a, const Pair &b)
              { return a.distance != b.distance ? a.distance < b.distance : (a.i != b.i ? a.i < b.i : a.j < b.j); });

    std::vector<bool> used_first(first.size(), false), used_second(second.size(), false);
    std::vector<std::size_t> picked;
    for (const Pair &p : pairs)
    {
        if (used_first[p.i] || used_second[p.j])
            continue;
        used_first[p.i] = used_second[p.j] = true;
        picked.push_back(p.i);
    }
    std::sort(picked.begin(), picked.end());

    std::vector<LoSComponent> matched;
    for (std::size_t i : picked)
        matched.push_back(first[i]);
    return matched;
}

uavpdc::DecontaminatedEstimate uavpdc::decontaminate_uav(const ChannelVector &estimate_block1,
                                                         const ChannelVector &estimate_block2,
                                                         const MatchedFilterBank &bank, const DetectorConfig &config,
                                                         const MatchTolerance &tol)
{
    if (estimate_block1.n_elem != estimate_block2.n_elem)
        throw std::invalid_argument("Training-block estimates differ in length.");

    DecontaminatedEstimate out;
    out.method = PdcMethod::UavTwoBlock;
    out.vector = estimate_block1;

    DetectionOutcome first = successive_detection(estimate_block1, bank, config);
    out.truncated = first.truncated;
    out.first_block = first.components;
    if (first.count() <= 1)
        return out;

    DetectionOutcome second = successive_detection(estimate_block2, bank, config);
    out.truncated = out.truncated || second.truncated;
    out.second_block = second.components;
    out.second_block_used = true;

    // match_components returns first-block members in detection order, so membership
    // can be tested by grid cell and gain identity.
    out.matched = match_components(out.first_block, out.second_block, tol, bank.array());
    if (out.matched.empty())
        return out;

    std::size_t next = 0;
    for (const LoSComponent &c : out.first_block)
    {
        const bool is_matched = next < out.matched.size() && out.matched[next].theta_index == c.theta_index &&
                                out.matched[next].phi_index == c.phi_index && out.matched[next].gain == c.gain;
        if (is_matched)
        {
            ++next;
            continue;
        }
        out.vector -= c.gain * bank.steering(c.theta_index, c.phi_index);
        out.removed.push_back(c);
    }
    return out;
}

arma::cx_mat uavpdc::orthogonal_complement_projector(const arma::cx_mat &A)
{
    const arma::uword M = A.n_rows;
    if (A.n_cols == 0)
        return arma::eye<arma::cx_mat>(M, M);
    if (A.n_cols >= M)
        throw std::invalid_argument("Projection needs fewer interferers than antennas.");
    const arma::cx_mat Q = range_basis(A);
    return arma::eye<arma::cx_mat>(M, M) - Q * Q.t();
}

uavpdc::DecontaminatedEstimate uavpdc::perfect_pdc(const ChannelVector &estimate, std::span<const Aoa> interferer_aoas,
                                                   const ArrayGeometry &array)
{
    const arma::uword M = array.num_antennas;
    if (estimate.n_elem != M)
        throw std::invalid_argument("Estimate length does not match the array size.");
    if (interferer_aoas.size() >= M)
        throw std::invalid_argument("Projection needs fewer interferers than antennas.");

    DecontaminatedEstimate out;
    out.method = PdcMethod::PerfectProjection;
    out.vector = estimate;
    if (interferer_aoas.empty())
        return out;

    arma::cx_mat A(M, interferer_aoas.size());
    for (std::size_t k = 0; k < interferer_aoas.size(); ++k)
        A.col(k) = steering_vector(array, interferer_aoas[k]);
    const arma::cx_mat Q = range_basis(A);
    out.vector -= Q * (Q.t() * estimate);
    return out;
}
