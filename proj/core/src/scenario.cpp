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

#include "uavpdc/scenario.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace
{
    using nlohmann::json;

    void reject_unknown(const json &j, std::initializer_list<const char *> keys, const std::string &where)
    {
        if (!j.is_object())
            throw std::invalid_argument("Config section '" + where + "' must be an object.");
        std::set<std::string> allowed(keys.begin(), keys.end());
        for (auto it = j.begin(); it != j.end(); ++it)
            if (!allowed.count(it.key()))
                throw std::invalid_argument("Unknown config key '" + where + "." + it.key() + "'.");
    }

    template <typename T>
    void read(const json &j, const char *key, T &dst)
    {
        if (j.contains(key))
            j.at(key).get_to(dst);
    }

    template <typename T>
    void read(const json &j, const char *key, std::optional<T> &dst)
    {
        if (!j.contains(key))
            return;
        if (j.at(key).is_null())
            dst.reset();
        else
            dst = j.at(key).get<T>();
    }

    template <typename T>
    json opt(const std::optional<T> &v)
    {
        return v ? json(*v) : json(nullptr);
    }

    std::string_view route_name(uavpdc::SpectrumRoute r)
    {
        switch (r)
        {
        case uavpdc::SpectrumRoute::Direct:
            return "direct";
        case uavpdc::SpectrumRoute::Fft:
            return "fft";
        default:
            return "auto";
        }
    }

    uavpdc::SpectrumRoute parse_route(const std::string &s)
    {
        if (s == "auto")
            return uavpdc::SpectrumRoute::Auto;
        if (s == "direct")
            return uavpdc::SpectrumRoute::Direct;
        if (s == "fft")
            return uavpdc::SpectrumRoute::Fft;
        throw std::invalid_argument("Unknown spectrum route '" + s + "' (auto, direct, fft).");
    }

    void positive(double v, const char *name)
    {
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument(std::string(name) + " must be positive and finite.");
    }
} // namespace

bool uavpdc::ScenarioConfig::has_scheme(Scheme s) const
{
    return std::find(schemes.begin(), schemes.end(), s) != schemes.end();
}

void uavpdc::ScenarioConfig::validate() const
{
    positive(layout.cell_radius, "layout.cell_radius");
    positive(layout.bs_height, "layout.bs_height");
    positive(layout.uav_height_min, "layout.uav_height_min");
    positive(layout.uav_height_max, "layout.uav_height_max");
    positive(layout.gue_height, "layout.gue_height");
    if (layout.uav_height_max < layout.uav_height_min)
        throw std::invalid_argument("layout.uav_height_max must not be below layout.uav_height_min.");
    if (layout.min_horizontal_distance < 0.0 || layout.min_horizontal_distance >= layout.cell_radius)
        throw std::invalid_argument("layout.min_horizontal_distance must lie in [0, cell_radius).");
    if (!is_valid_reuse_factor(layout.reuse_factor))
        throw std::invalid_argument("layout.reuse_factor must be of the form i^2 + i*j + j^2.");
    if (layout.num_cells < 2)
        throw std::invalid_argument("layout.num_cells must be at least 2.");
    if (num_uavs < 1 || num_uavs >= layout.num_cells)
        throw std::invalid_argument("num_uavs must satisfy 1 <= num_uavs < num_cells.");

    if (array.num_antennas < 2)
        throw std::invalid_argument("array.num_antennas must be at least 2.");
    positive(array.carrier_hz, "array.carrier_hz");
    if (array.radius)
        positive(*array.radius, "array.radius");

    positive(pathloss.ref_distance, "pathloss.ref_distance");
    positive(pathloss.exponent_los, "pathloss.exponent_los");
    positive(pathloss.exponent_nlos, "pathloss.exponent_nlos");
    if (pathloss.shadowing_nlos_db < 0.0)
        throw std::invalid_argument("pathloss.shadowing_nlos_db must not be negative.");

    positive(power.bandwidth_hz, "power.bandwidth_hz");
    if (!std::isfinite(power.user_dbm) || !std::isfinite(power.bs_dbm) || !std::isfinite(power.noise_density_dbm_hz))
        throw std::invalid_argument("Power levels must be finite.");

    if (pilot.length)
        positive(*pilot.length, "pilot.length");
    if (pilot.processing_gain)
        positive(*pilot.processing_gain, "pilot.processing_gain");

    positive(detector.kappa, "detector.kappa");
    if (detector.n_theta < 1 || detector.n_phi < 1)
        throw std::invalid_argument("Detector grid sizes must be at least 1.");
    if (detector.max_iterations && *detector.max_iterations < 1)
        throw std::invalid_argument("detector.max_iterations must be at least 1.");

    positive(pdc.epsilon_rel, "pdc.epsilon_rel");
    if (pdc.persistence < 0.0 || pdc.persistence > 1.0)
        throw std::invalid_argument("pdc.persistence must lie in [0, 1].");

    if (trials < 1)
        throw std::invalid_argument("trials must be at least 1.");
    if (workers < 1)
        throw std::invalid_argument("workers must be at least 1.");
    if (schemes.empty())
        throw std::invalid_argument("At least one scheme must be requested.");
}

uavpdc::ScenarioConfig uavpdc::reference_scenario()
{
    return ScenarioConfig{};
}

double uavpdc::dbm_to_watts(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

uavpdc::NormalizedBudget uavpdc::link_budget_normalize(const ScenarioConfig &config)
{
    config.validate();
    NormalizedBudget b;
    b.noise_watts = dbm_to_watts(config.power.noise_density_dbm_hz) * config.power.bandwidth_hz;
    b.user_snr = dbm_to_watts(config.power.user_dbm) / b.noise_watts;
    b.bs_snr = dbm_to_watts(config.power.bs_dbm) / b.noise_watts;
    const double M = (double)config.array.num_antennas;
    b.uplink_energy = M * b.user_snr;
    b.downlink_energy = M * b.bs_snr;
    const double tau = config.pilot.length ? *config.pilot.length : (double)config.layout.num_cells;
    b.pilot_gain = config.pilot.processing_gain ? *config.pilot.processing_gain : tau * b.user_snr;
    return b;
}

uavpdc::ScenarioContext uavpdc::make_context(const ScenarioConfig &config)
{
    config.validate();
    ScenarioContext ctx;
    ctx.config = config;
    ctx.base_layout = build_layout(config.layout);

    const double wavelength = speed_of_light / config.array.carrier_hz;
    ctx.array = ArrayGeometry::half_wavelength(config.array.num_antennas, wavelength);
    if (config.array.radius)
        ctx.array.radius = *config.array.radius;
    ctx.array.validate();

    ctx.pathloss.ref_distance = config.pathloss.ref_distance;
    ctx.pathloss.ref_gain_db = config.pathloss.ref_gain_db
                                   ? *config.pathloss.ref_gain_db
                                   : PathLossModel::free_space_ref_gain_db(wavelength, config.pathloss.ref_distance);
    ctx.pathloss.exponent_los = config.pathloss.exponent_los;
    ctx.pathloss.exponent_nlos = config.pathloss.exponent_nlos;
    ctx.pathloss.shadowing_nlos_db = config.pathloss.shadowing_nlos_db;

    ctx.normalized = link_budget_normalize(config);
    ctx.budget = {ctx.normalized.uplink_energy, ctx.normalized.downlink_energy};

    const double tau = config.pilot.length ? *config.pilot.length : (double)config.layout.num_cells;
    ctx.pilot = {tau, ctx.normalized.pilot_gain / tau};

    ctx.detector.kappa = config.detector.kappa;
    ctx.detector.max_iterations =
        config.detector.max_iterations ? *config.detector.max_iterations : 2 * (std::size_t)config.layout.num_cells;
    ctx.tolerance.epsilon_rel = config.pdc.epsilon_rel;

    AngularGrid grid{config.detector.n_theta, config.detector.n_phi};
    ctx.bank = std::make_shared<const MatchedFilterBank>(ctx.array, grid, config.detector.route);
    return ctx;
}

uavpdc::ScenarioConfig uavpdc::config_from_json_text(const std::string &text)
{
    json root;
    try
    {
        root = json::parse(text);
    }
    catch (const json::parse_error &e)
    {
        throw std::invalid_argument(std::string("Config is not valid JSON: ") + e.what());
    }

    ScenarioConfig c;
    try
    {
        reject_unknown(root,
                       {"layout", "num_uavs", "array", "pathloss", "power", "pilot", "detector", "pdc", "trials", "seed",
                        "workers", "schemes", "gue_pilot_interference", "gue_downlink_interference"},
                       "root");
        if (root.contains("layout"))
        {
            const json &j = root["layout"];
            reject_unknown(j,
                           {"cell_radius", "reuse_factor", "num_cells", "bs_height", "uav_height_min",
                            "uav_height_max", "gue_height", "min_horizontal_distance"},
                           "layout");
            read(j, "cell_radius", c.layout.cell_radius);
            read(j, "reuse_factor", c.layout.reuse_factor);
            read(j, "num_cells", c.layout.num_cells);
            read(j, "bs_height", c.layout.bs_height);
            read(j, "uav_height_min", c.layout.uav_height_min);
            read(j, "uav_height_max", c.layout.uav_height_max);
            read(j, "gue_height", c.layout.gue_height);
            read(j, "min_horizontal_distance", c.layout.min_horizontal_distance);
        }
        read(root, "num_uavs", c.num_uavs);
        if (root.contains("array"))
        {
            const json &j = root["array"];
            reject_unknown(j, {"num_antennas", "carrier_hz", "radius"}, "array");
            read(j, "num_antennas", c.array.num_antennas);
            read(j, "carrier_hz", c.array.carrier_hz);
            read(j, "radius", c.array.radius);
        }
        if (root.contains("pathloss"))
        {
            const json &j = root["pathloss"];
            reject_unknown(j, {"ref_distance", "ref_gain_db", "exponent_los", "exponent_nlos", "shadowing_nlos_db"},
                           "pathloss");
            read(j, "ref_distance", c.pathloss.ref_distance);
            read(j, "ref_gain_db", c.pathloss.ref_gain_db);
            read(j, "exponent_los", c.pathloss.exponent_los);
            read(j, "exponent_nlos", c.pathloss.exponent_nlos);
            read(j, "shadowing_nlos_db", c.pathloss.shadowing_nlos_db);
        }
        if (root.contains("power"))
        {
            const json &j = root["power"];
            reject_unknown(j, {"user_dbm", "bs_dbm", "noise_density_dbm_hz", "bandwidth_hz"}, "power");
            read(j, "user_dbm", c.power.user_dbm);
            read(j, "bs_dbm", c.power.bs_dbm);
            read(j, "noise_density_dbm_hz", c.power.noise_density_dbm_hz);
            read(j, "bandwidth_hz", c.power.bandwidth_hz);
        }
        if (root.contains("pilot"))
        {
            const json &j = root["pilot"];
            reject_unknown(j, {"length", "processing_gain"}, "pilot");
            read(j, "length", c.pilot.length);
            read(j, "processing_gain", c.pilot.processing_gain);
        }
        if (root.contains("detector"))
        {
            const json &j = root["detector"];
            reject_unknown(j, {"kappa", "n_theta", "n_phi", "max_iterations", "route"}, "detector");
            read(j, "kappa", c.detector.kappa);
            read(j, "n_theta", c.detector.n_theta);
            read(j, "n_phi", c.detector.n_phi);
            read(j, "max_iterations", c.detector.max_iterations);
            if (j.contains("route"))
                c.detector.route = parse_route(j["route"].get<std::string>());
        }
        if (root.contains("pdc"))
        {
            const json &j = root["pdc"];
            reject_unknown(j, {"epsilon_rel", "persistence"}, "pdc");
            read(j, "epsilon_rel", c.pdc.epsilon_rel);
            read(j, "persistence", c.pdc.persistence);
        }
        read(root, "trials", c.trials);
        read(root, "seed", c.seed);
        read(root, "workers", c.workers);
        if (root.contains("schemes"))
        {
            c.schemes.clear();
            for (const auto &s : root["schemes"])
                c.schemes.push_back(parse_scheme(s.get<std::string>()));
        }
        read(root, "gue_pilot_interference", c.gue_pilot_interference);
        read(root, "gue_downlink_interference", c.gue_downlink_interference);
    }
    catch (const json::exception &e)
    {
        throw std::invalid_argument(std::string("Config has a value of the wrong type: ") + e.what());
    }
    c.validate();
    return c;
}

uavpdc::ScenarioConfig uavpdc::load_config(const std::filesystem::path &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("Cannot open config file '" + path.string() + "'.");
    std::stringstream ss;
    ss << in.rdbuf();
    return config_from_json_text(ss.str());
}

std::string uavpdc::config_to_json_text(const ScenarioConfig &c)
{
    json root;
    root["layout"] = {{"cell_radius", c.layout.cell_radius},
                      {"reuse_factor", c.layout.reuse_factor},
                      {"num_cells", c.layout.num_cells},
                      {"bs_height", c.layout.bs_height},
                      {"uav_height_min", c.layout.uav_height_min},
                      {"uav_height_max", c.layout.uav_height_max},
                      {"gue_height", c.layout.gue_height},
                      {"min_horizontal_distance", c.layout.min_horizontal_distance}};
    root["num_uavs"] = c.num_uavs;
    root["array"] = {{"num_antennas", c.array.num_antennas}, {"carrier_hz", c.array.carrier_hz}, {"radius", opt(c.array.radius)}};
    root["pathloss"] = {{"ref_distance", c.pathloss.ref_distance},
                        {"ref_gain_db", opt(c.pathloss.ref_gain_db)},
                        {"exponent_los", c.pathloss.exponent_los},
                        {"exponent_nlos", c.pathloss.exponent_nlos},
                        {"shadowing_nlos_db", c.pathloss.shadowing_nlos_db}};
    root["power"] = {{"user_dbm", c.power.user_dbm},
                     {"bs_dbm", c.power.bs_dbm},
                     {"noise_density_dbm_hz", c.power.noise_density_dbm_hz},
                     {"bandwidth_hz", c.power.bandwidth_hz}};
    root["pilot"] = {{"length", opt(c.pilot.length)}, {"processing_gain", opt(c.pilot.processing_gain)}};
    root["detector"] = {{"kappa", c.detector.kappa},
                        {"n_theta", c.detector.n_theta},
                        {"n_phi", c.detector.n_phi},
                        {"max_iterations", opt(c.detector.max_iterations)},
                        {"route", std::string(route_name(c.detector.route))}};
    root["pdc"] = {{"epsilon_rel", c.pdc.epsilon_rel}, {"persistence", c.pdc.persistence}};
    root["trials"] = c.trials;
    root["seed"] = c.seed;
    root["workers"] = c.workers;
    json schemes = json::array();
    for (Scheme s : c.schemes)
        schemes.push_back(std::string(to_string(s)));
    root["schemes"] = schemes;
    root["gue_pilot_interference"] = c.gue_pilot_interference;
    root["gue_downlink_interference"] = c.gue_downlink_interference;
    return root.dump(2) + "\n";
}
