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

#include "uavpdc/sample_io.hpp"

#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>

namespace
{
    constexpr const char *samples_header = "trial,user,kind,direction,scheme,sinr_db";
    constexpr const char *diagnostics_header =
        "trial,bs,kind,los_interferers,detected,false_alarms,misses,truncated,second_detected,matched,identified";

    std::vector<std::string> split(const std::string &line)
    {
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string item;
        while (std::getline(ss, item, ','))
            f.push_back(item);
        return f;
    }

    void expect_header(std::istream &in, const char *header)
    {
        std::string line;
        if (!std::getline(in, line) || line != header)
            throw std::invalid_argument(std::string("CSV header mismatch, expected '") + header + "'.");
    }
} // namespace

void uavpdc::write_samples_csv(std::ostream &out, const std::vector<SampleRecord> &samples)
{
    out << samples_header << '\n' << std::setprecision(12);
    for (const SampleRecord &s : samples)
        out << s.trial << ',' << s.user << ',' << to_string(s.kind) << ',' << to_string(s.direction) << ','
            << to_string(s.scheme) << ',' << s.sinr_db << '\n';
}

std::vector<uavpdc::SampleRecord> uavpdc::read_samples_csv(std::istream &in)
{
    expect_header(in, samples_header);
    std::vector<SampleRecord> out;
    std::string line;
    std::size_t row = 1;
    while (std::getline(in, line))
    {
        ++row;
        if (line.empty())
            continue;
        const auto f = split(line);
        if (f.size() != 6)
            throw std::invalid_argument("samples.csv row " + std::to_string(row) + " does not have 6 fields.");
        try
        {
            out.push_back({std::stoull(f[0]), (std::uint32_t)std::stoul(f[1]), parse_user_kind(f[2]),
                           parse_link_direction(f[3]), parse_scheme(f[4]), std::stod(f[5])});
        }
        catch (const std::logic_error &e)
        {
            throw std::invalid_argument("samples.csv row " + std::to_string(row) + ": " + e.what());
        }
    }
    return out;
}

void uavpdc::write_diagnostics_csv(std::ostream &out, const std::vector<BsDiagnostics> &diagnostics)
{
    out << diagnostics_header << '\n';
    for (const BsDiagnostics &d : diagnostics)
        out << d.trial << ',' << d.bs << ',' << to_string(d.kind) << ',' << d.los_interferers << ',' << d.detected
            << ',' << d.false_alarms << ',' << d.misses << ',' << (d.truncated ? 1 : 0) << ',' << d.second_detected
            << ',' << d.matched << ',' << d.identified << '\n';
}

std::vector<uavpdc::BsDiagnostics> uavpdc::read_diagnostics_csv(std::istream &in)
{
    expect_header(in, diagnostics_header);
    std::vector<BsDiagnostics> out;
    std::string line;
    std::size_t row = 1;
    while (std::getline(in, line))
    {
        ++row;
        if (line.empty())
            continue;
        const auto f = split(line);
        if (f.size() != 11)
            throw std::invalid_argument("diagnostics.csv row " + std::to_string(row) + " does not have 11 fields.");
        try
        {
            BsDiagnostics d;
            d.trial = std::stoull(f[0]);
            d.bs = (std::uint32_t)std::stoul(f[1]);
            d.kind = parse_user_kind(f[2]);
            d.los_interferers = std::stoi(f[3]);
            d.detected = std::stoi(f[4]);
            d.false_alarms = std::stoi(f[5]);
            d.misses = std::stoi(f[6]);
            d.truncated = std::stoi(f[7]) != 0;
            d.second_detected = std::stoi(f[8]);
            d.matched = std::stoi(f[9]);
            d.identified = std::stoi(f[10]);
            out.push_back(d);
        }
        catch (const std::logic_error &e)
        {
            throw std::invalid_argument("diagnostics.csv row " + std::to_string(row) + ": " + e.what());
        }
    }
    return out;
}
