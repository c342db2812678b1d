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

#include "uavpdc/simulation.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <thread>

namespace
{
    using namespace uavpdc;

    std::vector<ChannelVector> gather(const std::vector<LinkState> &row, const std::vector<std::size_t> &users)
    {
        std::vector<ChannelVector> out;
        out.reserve(users.size());
        for (std::size_t k : users)
            out.push_back(row[k].channel);
        return out;
    }

    ChannelVector second_block_estimate(const ScenarioContext &ctx, const TrialRealization &r, std::size_t l, Rng &rng)
    {
        const LinkState &own = r.links[l][l];
        const ChannelVector own2 = los_channel(ctx.array, own.beta, own.geometry.aoa, uniform(rng, 0.0, 2.0 * std::numbers::pi));

        std::vector<ChannelVector> others;
        for (std::size_t k : r.interferers[l])
        {
            const LinkState &link = r.links[l][k];
            if (r.layout.users[k].kind == UserKind::Gue)
            {
                others.push_back(gen_gue_channel(ctx.array.num_antennas, link.beta, rng));
                continue;
            }
            const bool persists = ctx.config.pdc.persistence > 0.0 && uniform(rng, 0.0, 1.0) < ctx.config.pdc.persistence;
            if (persists)
            {
                others.push_back(los_channel(ctx.array, link.beta, link.geometry.aoa, uniform(rng, 0.0, 2.0 * std::numbers::pi)));
                continue;
            }
            // the pilot is now used by another UAV of the same cell
            const UserPlacement fresh = draw_user(r.layout.sites[k], UserKind::Uav, ctx.config.layout, rng);
            const LinkGeometry g = geometry_to_aoa(r.layout.sites[l], fresh);
            const double beta = path_loss(g.distance, LinkType::LoS, ctx.pathloss).beta;
            others.push_back(gen_uav_channel(ctx.array, beta, g.aoa, rng));
        }
        return ls_estimate(own2, others, ctx.pilot, rng, (int)l, 1).vector;
    }

    bool associated(const ChannelVector &a, const ChannelVector &b)
    {
        return std::abs(arma::cdot(a, b)) / (double)a.n_elem >= los_association_threshold;
    }
} // namespace

uavpdc::TrialRealization uavpdc::realize_trial(const ScenarioContext &ctx, std::uint64_t trial)
{
    const ScenarioConfig &cfg = ctx.config;
    Rng rng = substream(cfg.seed, trial);

    TrialRealization r;
    r.trial = trial;
    r.layout = place_users(ctx.base_layout, cfg.num_uavs, cfg.layout, rng);
    const std::size_t K = r.layout.sites.size();
    const bool gue_cross = cfg.gue_pilot_interference || cfg.gue_downlink_interference;

    r.links.assign(K, std::vector<LinkState>(K));
    for (std::size_t l = 0; l < K; ++l)
        for (std::size_t k = 0; k < K; ++k)
        {
            LinkState &link = r.links[l][k];
            link.geometry = geometry_to_aoa(r.layout.sites[l], r.layout.users[k]);
            if (r.layout.users[k].kind == UserKind::Uav)
            {
                link.type = LinkType::LoS;
                link.beta = path_loss(link.geometry.distance, LinkType::LoS, ctx.pathloss).beta;
                link.channel = gen_uav_channel(ctx.array, link.beta, link.geometry.aoa, rng);
            }
            else
            {
                link.type = LinkType::NLoS;
                if (k == l || gue_cross)
                {
                    link.beta = path_loss(link.geometry.distance, LinkType::NLoS, ctx.pathloss, rng).beta;
                    link.channel = gen_gue_channel(ctx.array.num_antennas, link.beta, rng);
                }
                else
                    link.beta = path_loss(link.geometry.distance, LinkType::NLoS, ctx.pathloss).beta;
            }
        }

    r.interferers.resize(K);
    for (std::size_t l = 0; l < K; ++l)
        for (std::size_t k = 0; k < K; ++k)
            if (k != l && (r.layout.users[k].kind == UserKind::Uav || cfg.gue_pilot_interference))
                r.interferers[l].push_back(k);

    r.estimates.resize(K);
    for (std::size_t l = 0; l < K; ++l)
    {
        const auto others = gather(r.links[l], r.interferers[l]);
        r.estimates[l] = ls_estimate(r.links[l][l].channel, others, ctx.pilot, rng, (int)l, 0).vector;
    }

    r.second_estimates.resize(K);
    if (cfg.has_scheme(Scheme::After))
        for (std::size_t l = 0; l < K; ++l)
            if (r.layout.users[l].kind == UserKind::Uav)
                r.second_estimates[l] = second_block_estimate(ctx, r, l, rng);
    return r;
}

uavpdc::TrialOutput uavpdc::evaluate_trial(const ScenarioContext &ctx, const TrialRealization &r)
{
    const ScenarioConfig &cfg = ctx.config;
    const std::size_t K = r.layout.sites.size();
    const MatchedFilterBank &bank = *ctx.bank;

    std::vector<Scheme> schemes = cfg.schemes;
    std::sort(schemes.begin(), schemes.end());
    schemes.erase(std::unique(schemes.begin(), schemes.end()), schemes.end());

    TrialOutput out;
    std::vector<std::vector<ChannelVector>> est(4, std::vector<ChannelVector>(K));

    for (std::size_t l = 0; l < K; ++l)
    {
        const UserKind kind = r.layout.users[l].kind;
        std::vector<Aoa> los_aoas;
        for (std::size_t k : r.interferers[l])
            if (r.layout.users[k].kind == UserKind::Uav)
                los_aoas.push_back(r.links[l][k].geometry.aoa);

        for (Scheme s : schemes)
        {
            ChannelVector &e = est[(int)s][l];
            switch (s)
            {
            case Scheme::Before:
                e = r.estimates[l];
                break;
            case Scheme::TrueCsi:
                e = r.links[l][l].channel;
                break;
            case Scheme::Perfect:
                e = perfect_pdc(r.estimates[l], los_aoas, ctx.array).vector;
                break;
            case Scheme::After:
            {
                DecontaminatedEstimate d = kind == UserKind::Uav
                                               ? decontaminate_uav(r.estimates[l], r.second_estimates[l], bank,
                                                                   ctx.detector, ctx.tolerance)
                                               : decontaminate_gue(r.estimates[l], bank, ctx.detector);
                e = d.vector;

                BsDiagnostics diag;
                diag.trial = r.trial;
                diag.bs = (std::uint32_t)l;
                diag.kind = kind;
                diag.los_interferers = (int)los_aoas.size();
                diag.truncated = d.truncated;
                const std::vector<LoSComponent> &found = kind == UserKind::Uav ? d.first_block : d.removed;
                diag.detected = (int)found.size();

                std::vector<ChannelVector> truth;
                for (const Aoa &a : los_aoas)
                    truth.push_back(steering_vector(ctx.array, a));
                const ChannelVector own_a = steering_vector(ctx.array, r.links[l][l].geometry.aoa);

                std::vector<ChannelVector> det_a;
                for (const LoSComponent &c : found)
                    det_a.push_back(bank.steering(c.theta_index, c.phi_index));

                for (const ChannelVector &a : det_a)
                {
                    bool any = kind == UserKind::Uav && associated(a, own_a);
                    for (const ChannelVector &t : truth)
                        any = any || associated(a, t);
                    diag.false_alarms += any ? 0 : 1;
                }
                for (const ChannelVector &t : truth)
                {
                    bool hit = false;
                    for (const ChannelVector &a : det_a)
                        hit = hit || associated(a, t);
                    diag.misses += hit ? 0 : 1;
                }

                if (kind == UserKind::Uav)
                {
                    if (d.second_block_used)
                    {
                        diag.second_detected = (int)d.second_block.size();
                        diag.matched = (int)d.matched.size();
                    }
                    if (!los_aoas.empty())
                    {
                        bool own_kept = false, interferer_kept = false;
                        if (d.second_block_used)
                            for (const LoSComponent &c : d.matched)
                            {
                                const ChannelVector a = bank.steering(c.theta_index, c.phi_index);
                                own_kept = own_kept || associated(a, own_a);
                                for (const ChannelVector &t : truth)
                                    interferer_kept = interferer_kept || associated(a, t);
                            }
                        diag.identified = own_kept && !interferer_kept ? 1 : 0;
                    }
                }
                out.diagnostics.push_back(diag);
                break;
            }
            }
        }
    }

    for (std::size_t i = 0; i < K; ++i)
    {
        const UserKind kind = r.layout.users[i].kind;
        const auto interferer_channels = gather(r.links[i], r.interferers[i]);
        std::vector<ChannelVector> to_user;
        const bool dl_interference = kind == UserKind::Uav || cfg.gue_downlink_interference;
        if (dl_interference)
            for (std::size_t l = 0; l < K; ++l)
                to_user.push_back(r.links[l][i].channel);

        for (LinkDirection dir : {LinkDirection::Uplink, LinkDirection::Downlink})
            for (Scheme s : schemes)
            {
                const auto &e = est[(int)s];
                double sinr;
                if (dir == LinkDirection::Uplink)
                    sinr = uplink_sinr(e[i], r.links[i][i].channel, interferer_channels, ctx.budget);
                else if (dl_interference)
                    sinr = downlink_sinr_uav(to_user, e, i, ctx.budget);
                else
                    sinr = downlink_sinr_gue(r.links[i][i].channel, e[i], ctx.budget);
                out.samples.push_back({r.trial, (std::uint32_t)i, kind, dir, s, to_db(sinr)});
            }
    }
    return out;
}

uavpdc::RunResult uavpdc::run_trials(const ScenarioContext &ctx, const std::function<void(std::uint64_t)> &progress)
{
    const std::uint64_t trials = ctx.config.trials;
    const unsigned workers = (unsigned)std::min<std::uint64_t>(std::max(1u, ctx.config.workers), trials);

    std::vector<TrialOutput> outputs(trials);
    std::atomic<std::uint64_t> next{0};
    std::atomic<bool> failed{false};
    std::mutex mutex;
    std::exception_ptr error;
    std::uint64_t error_trial = 0, done = 0;

    auto work = [&]()
    {
        for (;;)
        {
            const std::uint64_t t = next.fetch_add(1);
            if (t >= trials || failed.load())
                return;
            try
            {
                outputs[t] = evaluate_trial(ctx, realize_trial(ctx, t));
            }
            catch (...)
            {
                std::lock_guard<std::mutex> lock(mutex);
                if (!error || t < error_trial)
                {
                    error = std::current_exception();
                    error_trial = t;
                }
                failed = true;
                return;
            }
            if (progress)
            {
                std::lock_guard<std::mutex> lock(mutex);
                progress(++done);
            }
        }
    };

    if (workers == 1)
        work();
    else
    {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back(work);
        for (auto &th : pool)
            th.join();
    }

    if (error)
    {
        try
        {
            std::rethrow_exception(error);
        }
        catch (const std::exception &e)
        {
            throw std::runtime_error("Trial " + std::to_string(error_trial) + ": " + e.what());
        }
    }

    RunResult result;
    for (auto &o : outputs)
    {
        result.samples.insert(result.samples.end(), o.samples.begin(), o.samples.end());
        result.diagnostics.insert(result.diagnostics.end(), o.diagnostics.begin(), o.diagnostics.end());
    }
    return result;
}

uavpdc::RunResult uavpdc::run_trials(const ScenarioConfig &config)
{
    return run_trials(make_context(config));
}
