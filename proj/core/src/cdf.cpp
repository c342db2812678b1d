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

#include "uavpdc/cdf.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <stdexcept>

std::string uavpdc::SampleGroup::name() const
{
    return std::string(to_string(kind)) + "_" + std::string(to_string(direction)) + "_" + std::string(to_string(scheme));
}

std::vector<uavpdc::SampleGroup> uavpdc::all_groups()
{
    std::vector<SampleGroup> g;
    for (UserKind k : {UserKind::Uav, UserKind::Gue})
        for (LinkDirection d : {LinkDirection::Uplink, LinkDirection::Downlink})
            for (Scheme s : {Scheme::Before, Scheme::After, Scheme::Perfect, Scheme::TrueCsi})
                g.push_back({k, d, s});
    return g;
}

double uavpdc::CdfSeries::quantile(double p) const
{
    if (values_db.empty())
        throw std::invalid_argument("Quantile of an empty CDF.");
    if (!(p > 0.0) || p > 1.0)
        throw std::invalid_argument("Quantile level must lie in (0, 1].");
    const auto n = values_db.size();
    std::size_t idx = (std::size_t)std::ceil(p * (double)n - 1e-9);
    idx = std::clamp<std::size_t>(idx, 1, n);
    return values_db[idx - 1];
}

std::vector<double> uavpdc::group_values(std::span<const SampleRecord> samples, const SampleGroup &group)
{
    std::vector<double> v;
    for (const SampleRecord &s : samples)
        if (s.kind == group.kind && s.direction == group.direction && s.scheme == group.scheme)
            v.push_back(s.sinr_db);
    std::sort(v.begin(), v.end());
    return v;
}

uavpdc::CdfSet uavpdc::empirical_cdf(std::span<const SampleRecord> samples, std::span<const SampleGroup> groups,
                                     int num_uavs)
{
    CdfSet set;
    for (const SampleGroup &g : groups)
    {
        CdfSeries s;
        s.group = g;
        s.num_uavs = num_uavs;
        s.values_db = group_values(samples, g);
        if (s.values_db.empty())
        {
            set.warnings.push_back("No samples for group " + g.name() + "; CDF omitted.");
            continue;
        }
        const double n = (double)s.values_db.size();
        s.probabilities.resize(s.values_db.size());
        for (std::size_t i = 0; i < s.values_db.size(); ++i)
            s.probabilities[i] = (double)(i + 1) / n;
        set.series.push_back(std::move(s));
    }
    return set;
}

bool uavpdc::stochastically_dominates(const CdfSeries &upper, const CdfSeries &lower)
{
    if (upper.values_db.size() != lower.values_db.size() || upper.values_db.empty())
        throw std::invalid_argument("Dominance check needs two nonempty series of equal length.");
    for (std::size_t i = 0; i < upper.values_db.size(); ++i)
        if (upper.values_db[i] < lower.values_db[i])
            return false;
    return true;
}

void uavpdc::write_cdf_csv(std::ostream &out, const CdfSeries &series)
{
    out << "sinr_db,probability\n";
    out << std::setprecision(10);
    for (std::size_t i = 0; i < series.values_db.size(); ++i)
        out << series.values_db[i] << ',' << series.probabilities[i] << '\n';
}
