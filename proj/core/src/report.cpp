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

#include "uavpdc/report.hpp"

#include <iomanip>
#include <map>
#include <sstream>

namespace
{
    std::string fmt(double v, int width = 9)
    {
        std::ostringstream s;
        s << std::fixed << std::setprecision(2) << std::setw(width) << v;
        return s.str();
    }

    std::string fmt(const std::optional<double> &v, int width = 9)
    {
        return v ? fmt(*v, width) : std::string((std::size_t)width - 1, ' ') + "-";
    }
} // namespace

uavpdc::Report uavpdc::compare_report(std::span<const SampleRecord> samples,
                                      std::span<const BsDiagnostics> diagnostics, int num_uavs)
{
    Report rep;
    rep.num_uavs = num_uavs;

    const auto all = all_groups();
    const CdfSet cdfs = empirical_cdf(samples, all, num_uavs);
    std::map<SampleGroup, const CdfSeries *> by_group;
    for (const CdfSeries &s : cdfs.series)
        by_group[s.group] = &s;

    for (const CdfSeries &s : cdfs.series)
    {
        GroupStats g;
        g.group = s.group;
        g.count = s.values_db.size();
        g.median_db = s.quantile(0.5);
        g.p5_db = s.quantile(0.05);
        g.p95_db = s.quantile(0.95);
        SampleGroup ref = s.group;
        ref.scheme = Scheme::Perfect;
        if (by_group.count(ref))
            g.gap_to_perfect_db = by_group[ref]->quantile(0.5) - g.median_db;
        ref.scheme = Scheme::TrueCsi;
        if (by_group.count(ref))
            g.gap_to_truecsi_db = by_group[ref]->quantile(0.5) - g.median_db;
        rep.groups.push_back(g);
    }

    for (UserKind kind : {UserKind::Uav, UserKind::Gue})
    {
        DetectorStats d;
        d.kind = kind;
        std::size_t with_fa = 0, truncated = 0, fa = 0, misses = 0, interferers = 0, id_total = 0, id_ok = 0;
        for (const BsDiagnostics &b : diagnostics)
        {
            if (b.kind != kind)
                continue;
            ++d.bs_count;
            fa += (std::size_t)b.false_alarms;
            with_fa += b.false_alarms > 0 ? 1 : 0;
            truncated += b.truncated ? 1 : 0;
            misses += (std::size_t)b.misses;
            interferers += (std::size_t)b.los_interferers;
            if (b.identified >= 0)
            {
                ++id_total;
                id_ok += (std::size_t)b.identified;
            }
        }
        if (d.bs_count == 0)
            continue;
        const double n = (double)d.bs_count;
        d.false_alarms_per_bs = (double)fa / n;
        d.false_alarm_rate = (double)with_fa / n;
        d.truncation_rate = (double)truncated / n;
        if (interferers > 0)
            d.miss_rate = (double)misses / (double)interferers;
        if (id_total > 0)
            d.identification_rate = (double)id_ok / (double)id_total;
        rep.detector.push_back(d);
    }
    return rep;
}

void uavpdc::render_report(std::ostream &out, const Report &rep)
{
    out << "K_u = " << rep.num_uavs << "\n\n";
    out << "group                  count   median      p5     p95  to_perf  to_true\n";
    for (const GroupStats &g : rep.groups)
    {
        std::string name = g.group.name();
        name.resize(20, ' ');
        out << name << std::setw(8) << g.count << fmt(g.median_db) << fmt(g.p5_db, 8) << fmt(g.p95_db, 8)
            << fmt(g.gap_to_perfect_db) << fmt(g.gap_to_truecsi_db) << '\n';
    }
    out << "\ndetector   BSs  ident   FA/BS  FA_rate  miss  trunc\n";
    for (const DetectorStats &d : rep.detector)
    {
        std::string name(to_string(d.kind));
        name.resize(8, ' ');
        out << name << std::setw(6) << d.bs_count << fmt(d.identification_rate, 7) << fmt(d.false_alarms_per_bs, 8)
            << fmt(d.false_alarm_rate, 9) << fmt(d.miss_rate, 6) << fmt(d.truncation_rate, 7) << '\n';
    }
}
