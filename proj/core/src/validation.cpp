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

#include "uavpdc/validation.hpp"

#include "uavpdc/cdf.hpp"
#include "uavpdc/pdc.hpp"
#include "uavpdc/sample_io.hpp"
#include "uavpdc/scenario.hpp"
#include "uavpdc/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace
{
    using namespace uavpdc;
    constexpr double pi = std::numbers::pi;

    ArrayGeometry array_for(arma::uword M)
    {
        return ArrayGeometry::half_wavelength(M, speed_of_light / 2e9);
    }

    Aoa random_aoa(Rng &rng)
    {
        return {uniform(rng, 0.0, pi / 2.0), uniform(rng, -pi, pi)};
    }

    std::string num(double v, int precision = 3)
    {
        std::ostringstream s;
        s << std::fixed << std::setprecision(precision) << v;
        return s.str();
    }

    std::string sci(double v)
    {
        std::ostringstream s;
        s << std::scientific << std::setprecision(2) << v;
        return s.str();
    }

    std::string verdict(bool ok)
    {
        return ok ? "ok  " : "FAIL";
    }

    // Unit direction vector of an AoA, for great-circle separations.
    arma::vec3 direction(const Aoa &a)
    {
        return {std::sin(a.theta) * std::cos(a.phi), std::sin(a.theta) * std::sin(a.phi), std::cos(a.theta)};
    }

    double angular_separation(const Aoa &a, const Aoa &b)
    {
        return std::acos(std::clamp(arma::dot(direction(a), direction(b)), -1.0, 1.0));
    }

    // ---------------------------------------------------------------- criterion 1
    bool criterion_projection(CriterionResult &res, const ValidationOptions &opt)
    {
        constexpr arma::uword M = 128;
        constexpr int sets_per_size = 40;
        const double tol = 1e-9 * std::sqrt((double)M);
        const ArrayGeometry array = array_for(M);
        Rng rng = substream(opt.seed, 1);

        double worst_null = 0.0, worst_idem = 0.0;
        for (int n = 1; n <= 8; ++n)
            for (int s = 0; s < sets_per_size; ++s)
            {
                arma::cx_mat A(M, (arma::uword)n);
                for (int k = 0; k < n; ++k)
                    A.col((arma::uword)k) = steering_vector(array, random_aoa(rng));
                const arma::cx_mat P = orthogonal_complement_projector(A);
                for (int k = 0; k < n; ++k)
                    worst_null = std::max(worst_null, arma::norm(P * A.col((arma::uword)k)));
                worst_idem = std::max(worst_idem, arma::norm(P * P - P, "fro"));
            }
        const bool ok = worst_null <= tol && worst_idem <= tol;
        res.details.push_back(verdict(worst_null <= tol) + " max ||P a_k|| = " + sci(worst_null) + " (limit 1e-9*sqrt(M) = " + sci(tol) + "), " +
                              std::to_string(8 * sets_per_size) + " sets of size 1..8");
        res.details.push_back(verdict(worst_idem <= tol) + " max ||P^2 - P||_F = " + sci(worst_idem));
        return ok;
    }

    // ---------------------------------------------------------------- criterion 2
    bool criterion_concentration(CriterionResult &res, const ValidationOptions &opt)
    {
        constexpr int draws = 1000;
        constexpr double sigma2 = 2.0;
        const std::vector<arma::uword> sizes{32, 128, 512, 4096};
        std::vector<double> cross_mean, mixed_mean, self_within;

        for (std::size_t m = 0; m < sizes.size(); ++m)
        {
            const arma::uword M = sizes[m];
            const ArrayGeometry array = array_for(M);
            Rng rng = substream(opt.seed, 200 + m);
            double cross = 0.0, mixed = 0.0;
            int within = 0;
            for (int d = 0; d < draws; ++d)
            {
                const ChannelVector a1 = steering_vector(array, random_aoa(rng));
                const ChannelVector a2 = steering_vector(array, random_aoa(rng));
                cross += std::abs(arma::cdot(a1, a2)) / (double)M;

                const arma::cx_vec p = complex_normal_vector(rng, M, sigma2);
                const double self = std::real(arma::cdot(p, p)) / (double)M;
                within += std::abs(self - sigma2) <= 0.05 * sigma2 ? 1 : 0;

                const arma::cx_vec q = complex_normal_vector(rng, M, 1.0);
                mixed += std::abs(arma::cdot(q, a1)) / (double)M;
            }
            cross_mean.push_back(cross / draws);
            mixed_mean.push_back(mixed / draws);
            self_within.push_back((double)within / draws);
        }

        auto decreasing = [](const std::vector<double> &v)
        {
            for (std::size_t i = 1; i < v.size(); ++i)
                if (!(v[i] < v[i - 1]))
                    return false;
            return true;
        };
        auto series = [&](const std::vector<double> &v)
        {
            std::string s;
            for (std::size_t i = 0; i < v.size(); ++i)
                s += (i ? ", " : "") + std::string("M=") + std::to_string(sizes[i]) + ": " + num(v[i], 4);
            return s;
        };

        const bool c1 = decreasing(cross_mean);
        const bool c2 = decreasing(mixed_mean) && mixed_mean.back() < 0.05;
        const bool c3 = self_within.back() >= 0.99;
        res.details.push_back(verdict(c1) + " mean |a1^H a2|/M strictly decreasing: " + series(cross_mean));
        res.details.push_back(verdict(c2) + " mean |p^H a|/M strictly decreasing, < 0.05 at M=4096: " + series(mixed_mean));
        res.details.push_back(verdict(c3) + " share of draws with |p^H p/M - s2| <= 5% s2 (>= 0.99 at M=4096): " +
                              series(self_within));
        return c1 && c2 && c3;
    }

    // ---------------------------------------------------------------- criteria 3-5
    // Sample means; when `std_errors` is given it receives the standard error of each mean.
    std::vector<EqualBetaSinr> equal_beta_means(const EqualBetaSetup &setup, std::span<const Scheme> schemes,
                                                int trials, std::uint64_t seed, std::uint64_t stream,
                                                std::vector<EqualBetaSinr> *std_errors = nullptr)
    {
        std::vector<EqualBetaSinr> acc(schemes.size()), sq(schemes.size());
        for (int t = 0; t < trials; ++t)
        {
            Rng rng = substream(seed, stream * 1000003ULL + (std::uint64_t)t);
            const auto r = equal_beta_trial(setup, schemes, rng);
            for (std::size_t s = 0; s < schemes.size(); ++s)
            {
                acc[s].ul_uav += r[s].ul_uav / trials;
                acc[s].ul_gue += r[s].ul_gue / trials;
                acc[s].dl_uav += r[s].dl_uav / trials;
                acc[s].dl_gue += r[s].dl_gue / trials;
                sq[s].ul_uav += r[s].ul_uav * r[s].ul_uav / trials;
                sq[s].ul_gue += r[s].ul_gue * r[s].ul_gue / trials;
                sq[s].dl_uav += r[s].dl_uav * r[s].dl_uav / trials;
                sq[s].dl_gue += r[s].dl_gue * r[s].dl_gue / trials;
            }
        }
        if (std_errors)
        {
            auto se = [&](double m, double m2) { return std::sqrt(std::max(0.0, m2 - m * m) / (trials - 1)); };
            std_errors->assign(schemes.size(), {});
            for (std::size_t s = 0; s < schemes.size(); ++s)
                (*std_errors)[s] = {se(acc[s].ul_uav, sq[s].ul_uav), se(acc[s].ul_gue, sq[s].ul_gue),
                                    se(acc[s].dl_uav, sq[s].dl_uav), se(acc[s].dl_gue, sq[s].dl_gue)};
        }
        return acc;
    }

    bool criterion_table1(CriterionResult &res, const ValidationOptions &opt)
    {
        constexpr int trials = 500;
        constexpr double tol_db = 1.0;
        EqualBetaSetup setup;
        setup.num_antennas = 4096;
        setup.energy = 1000.0;
        setup.pilot_gain = setup.num_users * setup.energy;
        const PowerBudget budget{setup.energy, setup.energy};

        bool ok = true;
        const std::vector<Scheme> before{Scheme::Before};
        const EqualBetaSinr m = equal_beta_means(setup, before, trials, opt.seed, 3)[0];

        auto check = [&](const char *label, double measured, double target)
        {
            const double err = std::abs(to_db(measured) - to_db(target));
            ok = ok && err <= tol_db;
            res.details.push_back(verdict(err <= tol_db) + " " + label + ": " + num(to_db(measured), 2) +
                                  " dB vs table " + num(to_db(target), 2) + " dB (|diff| " + num(err, 2) + " <= 1 dB)");
        };
        const int K = setup.num_users, Ku = setup.num_uavs;
        check("UL/UAV/Before", m.ul_uav, *table1_high_snr(UserKind::Uav, LinkDirection::Uplink, Scheme::Before, K, Ku, 1.0, budget));
        check("UL/GUE/Before", m.ul_gue, *table1_high_snr(UserKind::Gue, LinkDirection::Uplink, Scheme::Before, K, Ku, 1.0, budget));
        check("DL/UAV/Before", m.dl_uav, *table1_high_snr(UserKind::Uav, LinkDirection::Downlink, Scheme::Before, K, Ku, 1.0, budget));
        check("DL/GUE/Before", m.dl_gue, *table1_high_snr(UserKind::Gue, LinkDirection::Downlink, Scheme::Before, K, Ku, 1.0, budget));

        const std::vector<Scheme> perfect{Scheme::Perfect};
        for (double e_db : {20.0, 30.0, 40.0})
        {
            EqualBetaSetup s = setup;
            s.energy = from_db(e_db);
            s.pilot_gain = s.num_users * s.energy;
            const EqualBetaSinr p = equal_beta_means(s, perfect, trials / 5, opt.seed, 30 + (std::uint64_t)e_db)[0];
            const std::string tag = " Perfect @ E*beta = " + num(e_db, 0) + " dB";
            check(("UL/UAV" + tag).c_str(), p.ul_uav, s.energy);
            check(("UL/GUE" + tag).c_str(), p.ul_gue, s.energy);
            check(("DL/UAV" + tag).c_str(), p.dl_uav, s.energy);
            check(("DL/GUE" + tag).c_str(), p.dl_gue, s.energy);
        }
        return ok;
    }

    bool criterion_energy_sweep(CriterionResult &res, const ValidationOptions &opt)
    {
        constexpr int trials = 300;
        const std::vector<double> e_db{20.0, 25.0, 30.0, 35.0, 40.0};
        const std::vector<Scheme> schemes{Scheme::Before, Scheme::Perfect};

        std::vector<double> b_uav, b_gue, a_uav, a_gue;
        for (std::size_t i = 0; i < e_db.size(); ++i)
        {
            EqualBetaSetup s;
            s.num_antennas = 4096;
            s.energy = from_db(e_db[i]);
            s.pilot_gain = s.num_users * s.energy;
            const auto m = equal_beta_means(s, schemes, trials, opt.seed, 40 + i);
            b_uav.push_back(to_db(m[0].ul_uav));
            b_gue.push_back(to_db(m[0].ul_gue));
            a_uav.push_back(to_db(m[1].ul_uav));
            a_gue.push_back(to_db(m[1].ul_gue));
        }

        auto spread = [](const std::vector<double> &v)
        { return *std::max_element(v.begin(), v.end()) - *std::min_element(v.begin(), v.end()); };
        auto slope = [&](const std::vector<double> &y)
        {
            const arma::vec x(e_db), yy(y);
            const double xm = arma::mean(x), ym = arma::mean(yy);
            return arma::dot(x - xm, yy - ym) / arma::dot(x - xm, x - xm);
        };

        bool ok = true;
        for (auto [label, v] : {std::pair<const char *, std::vector<double> *>{"UL/UAV/Before", &b_uav},
                                {"UL/GUE/Before", &b_gue}})
        {
            const double sp = spread(*v);
            ok = ok && sp <= 0.5;
            res.details.push_back(verdict(sp <= 0.5) + " " + label + " spread over E*beta = 20..40 dB: " + num(sp, 3) +
                                  " dB (<= 0.5)");
        }
        for (auto [label, v] : {std::pair<const char *, std::vector<double> *>{"UL/UAV/Perfect", &a_uav},
                                {"UL/GUE/Perfect", &a_gue}})
        {
            const double k = slope(*v);
            const bool good = std::abs(k - 1.0) <= 0.05;
            ok = ok && good;
            res.details.push_back(verdict(good) + " " + label + " dB-dB slope: " + num(k, 4) + " (1.00 +- 0.05)");
        }
        return ok;
    }

    bool criterion_convergence(CriterionResult &res, const ValidationOptions &opt)
    {
        constexpr int trials = 8000;
        const std::vector<arma::uword> sizes{128, 512, 2048, 4096};
        const std::vector<Scheme> schemes{Scheme::Before, Scheme::Perfect};

        // gaps[scheme][combo][m]
        std::vector<std::vector<std::vector<double>>> gaps(2, std::vector<std::vector<double>>(4));
        std::vector<std::vector<std::vector<double>>> errors = gaps;
        for (std::size_t m = 0; m < sizes.size(); ++m)
        {
            EqualBetaSetup s;
            s.num_antennas = sizes[m];
            s.energy = 10.0;
            s.pilot_gain = s.num_users * s.energy;
            std::vector<EqualBetaSinr> se;
            const auto mean = equal_beta_means(s, schemes, trials, opt.seed, 50 + m, &se);
            for (std::size_t k = 0; k < schemes.size(); ++k)
            {
                const EqualBetaSinr asym = equal_beta_asymptote(s, schemes[k]);
                gaps[k][0].push_back(std::abs(mean[k].ul_uav - asym.ul_uav));
                gaps[k][1].push_back(std::abs(mean[k].ul_gue - asym.ul_gue));
                gaps[k][2].push_back(std::abs(mean[k].dl_uav - asym.dl_uav));
                gaps[k][3].push_back(std::abs(mean[k].dl_gue - asym.dl_gue));
                errors[k][0].push_back(se[k].ul_uav);
                errors[k][1].push_back(se[k].ul_gue);
                errors[k][2].push_back(se[k].dl_uav);
                errors[k][3].push_back(se[k].dl_gue);
            }
        }

        const char *combos[] = {"UL/UAV", "UL/GUE", "DL/UAV", "DL/GUE"};
        bool ok = true;
        for (std::size_t k = 0; k < schemes.size(); ++k)
            for (std::size_t c = 0; c < 4; ++c)
            {
                const auto &g = gaps[k][c];
                bool mono = true;
                for (std::size_t i = 1; i < g.size(); ++i)
                    mono = mono && g[i] <= g[i - 1];
                ok = ok && mono;
                std::string line = verdict(mono) + " " + combos[c] + "/" + std::string(to_string(schemes[k])) +
                                   " |mean - asymptote| over M = 128, 512, 2048, 4096:";
                for (std::size_t i = 0; i < g.size(); ++i)
                    line += " " + sci(g[i]) + " (se " + sci(errors[k][c][i]) + ")";
                res.details.push_back(line);
            }
        return ok;
    }

    // ---------------------------------------------------------------- criterion 6
    bool criterion_detector(CriterionResult &res, const ValidationOptions &opt)
    {
        constexpr int trials = 1000;
        constexpr arma::uword M = 128;
        const ArrayGeometry array = array_for(M);
        const AngularGrid grid{64, 256};
        const MatchedFilterBank bank(array, grid);
        const DetectorConfig cfg{3.0, 18};
        const Beamwidths bw = array_beamwidths(array);
        const double min_sep = 2.0 * std::max(bw.elevation, bw.azimuth);

        auto planted = [&](double snr_db, std::uint64_t stream, double &aoa_rate, double &gain_rate)
        {
            int aoa_ok = 0, gain_ok = 0;
            for (int t = 0; t < trials; ++t)
            {
                Rng rng = substream(opt.seed, stream * 1000003ULL + (std::uint64_t)t);
                std::size_t cells[2][2];
                for (;;)
                {
                    for (auto &c : cells)
                    {
                        c[0] = (std::size_t)std::uniform_int_distribution<std::size_t>(0, grid.n_theta - 1)(rng);
                        c[1] = (std::size_t)std::uniform_int_distribution<std::size_t>(0, grid.n_phi - 1)(rng);
                    }
                    if (angular_separation(grid.cell(cells[0][0], cells[0][1]), grid.cell(cells[1][0], cells[1][1])) >= min_sep)
                        break;
                }
                std::complex<double> mu[2];
                ChannelVector est = complex_normal_vector(rng, M, from_db(-snr_db));
                for (int k = 0; k < 2; ++k)
                {
                    mu[k] = std::polar(1.0, uniform(rng, 0.0, 2.0 * pi));
                    est += mu[k] * bank.steering(cells[k][0], cells[k][1]);
                }
                const DetectionOutcome det = successive_detection(est, bank, cfg);
                bool all_found = true, all_gain = true;
                for (int k = 0; k < 2; ++k)
                {
                    const auto it = std::find_if(det.components.begin(), det.components.end(), [&](const LoSComponent &c)
                                                 { return c.theta_index == cells[k][0] && c.phi_index == cells[k][1]; });
                    if (it == det.components.end())
                    {
                        all_found = all_gain = false;
                        continue;
                    }
                    const double ratio = std::abs(it->gain) / std::abs(mu[k]);
                    all_gain = all_gain && ratio >= 0.95 && ratio <= 1.05;
                }
                aoa_ok += all_found ? 1 : 0;
                gain_ok += all_gain ? 1 : 0;
            }
            aoa_rate = (double)aoa_ok / trials;
            gain_rate = (double)gain_ok / trials;
        };

        double aoa0, gain0, aoa10, gain10;
        planted(0.0, 60, aoa0, gain0);
        planted(10.0, 61, aoa10, gain10);

        int alarms = 0;
        double detections = 0.0;
        for (int t = 0; t < trials; ++t)
        {
            Rng rng = substream(opt.seed, 62 * 1000003ULL + (std::uint64_t)t);
            const DetectionOutcome det = successive_detection(complex_normal_vector(rng, M, 1.0), bank, cfg);
            alarms += det.count() > 0 ? 1 : 0;
            detections += (double)det.count() / trials;
        }
        const double fa = (double)alarms / trials;

        const bool c1 = aoa0 >= 0.99, c2 = gain0 >= 0.95, c3 = fa <= 0.05;
        res.details.push_back("two planted unit-gain components, separation >= " + num(min_sep, 4) +
                              " rad (2 beamwidths), M = 128, kappa = 3, " + std::to_string(trials) + " trials each");
        res.details.push_back(verdict(c1) + " exact-cell AoA recovery at 0 dB per-antenna SNR: " + num(aoa0, 4) +
                              " (>= 0.99); at 10 dB: " + num(aoa10, 4));
        res.details.push_back(verdict(c2) + " |mu_hat|/|mu| in [0.95, 1.05] at 0 dB: " + num(gain0, 4) +
                              " (>= 0.95); at 10 dB: " + num(gain10, 4));
        res.details.push_back(verdict(c3) + " pure-noise trials with any detection: " + num(fa, 4) +
                              " (<= 0.05); mean detections per noise trial " + num(detections, 2));
        return c1 && c2 && c3;
    }

    // ---------------------------------------------------------------- criterion 7
    bool criterion_two_block(CriterionResult &res, const ValidationOptions &opt)
    {
        ScenarioConfig cfg = reference_scenario();
        cfg.num_uavs = 3;
        cfg.trials = 300;
        cfg.seed = opt.seed;
        cfg.workers = opt.workers;
        cfg.schemes = {Scheme::After};

        const RunResult run = run_trials(make_context(cfg));
        int total = 0, correct = 0;
        for (const BsDiagnostics &d : run.diagnostics)
            if (d.kind == UserKind::Uav && d.identified >= 0)
            {
                ++total;
                correct += d.identified;
            }
        const double rate = total ? (double)correct / total : 0.0;
        const bool c1 = total > 0 && rate >= 0.95;
        res.details.push_back(verdict(c1) + " own-component identification, fresh second-block interferers: " +
                              num(rate, 4) + " of " + std::to_string(total) + " UAV BSs (>= 0.95)");

        cfg.pdc.persistence = 1.0;
        cfg.trials = 100;
        const ScenarioContext ctx = make_context(cfg);
        int branch = 0, exact = 0;
        for (std::uint64_t t = 0; t < cfg.trials; ++t)
        {
            const TrialRealization r = realize_trial(ctx, t);
            for (std::size_t l = 0; l < r.layout.users.size(); ++l)
            {
                if (r.layout.users[l].kind != UserKind::Uav)
                    continue;
                const DecontaminatedEstimate d =
                    decontaminate_uav(r.estimates[l], r.second_estimates[l], *ctx.bank, ctx.detector, ctx.tolerance);
                if (d.matched.size() <= 1)
                    continue;
                ++branch;
                ChannelVector expected = r.estimates[l];
                std::size_t not_matched = 0;
                for (const LoSComponent &c : d.first_block)
                {
                    const bool in_matched = std::any_of(d.matched.begin(), d.matched.end(), [&](const LoSComponent &m)
                                                        { return m.theta_index == c.theta_index && m.phi_index == c.phi_index && m.gain == c.gain; });
                    if (in_matched)
                        continue;
                    ++not_matched;
                    expected -= c.gain * ctx.bank->steering(c.theta_index, c.phi_index);
                }
                const bool good = d.removed.size() == not_matched &&
                                  d.removed.size() + d.matched.size() == d.first_block.size() &&
                                  arma::norm(d.vector - expected) <= 1e-9 * arma::norm(r.estimates[l]);
                exact += good ? 1 : 0;
            }
        }
        const bool c2 = branch > 0 && exact == branch;
        res.details.push_back(verdict(c2) + " persistent interferers: |Delta D| > 1 branch ran at " +
                              std::to_string(branch) + " UAV BSs, D \\ Delta D fully removed at " + std::to_string(exact));
        return c1 && c2;
    }

    // ---------------------------------------------------------------- criterion 8
    bool criterion_figures(CriterionResult &res, const ValidationOptions &opt)
    {
        auto run_for = [&](int ku)
        {
            ScenarioConfig cfg = reference_scenario();
            cfg.num_uavs = ku;
            cfg.trials = 10000;
            cfg.seed = opt.seed;
            cfg.workers = opt.workers;
            cfg.schemes = {Scheme::Before, Scheme::After, Scheme::Perfect};
            return run_trials(make_context(cfg)).samples;
        };
        const auto s1 = run_for(1);
        const auto s3 = run_for(3);

        auto median = [](const std::vector<SampleRecord> &s, SampleGroup g)
        {
            const auto v = group_values(s, g);
            return v.empty() ? std::nan("") : v[(v.size() + 1) / 2 - 1];
        };

        bool ok = true;
        for (UserKind k : {UserKind::Uav, UserKind::Gue})
            for (LinkDirection d : {LinkDirection::Uplink, LinkDirection::Downlink})
            {
                const std::vector<SampleGroup> pair{{k, d, Scheme::After}, {k, d, Scheme::Before}};
                const CdfSet c = empirical_cdf(s3, pair, 3);
                const bool dom = c.series.size() == 2 && stochastically_dominates(c.series[0], c.series[1]);
                std::size_t violations = 0;
                if (c.series.size() == 2)
                    for (std::size_t i = 0; i < c.series[0].values_db.size(); ++i)
                        violations += c.series[0].values_db[i] < c.series[1].values_db[i] ? 1 : 0;
                ok = ok && dom;
                res.details.push_back(verdict(dom) + " (a) K_u=3 " + std::string(to_string(k)) + " " +
                                      std::string(to_string(d)) + ": After CDF right of Before at every level (" +
                                      std::to_string(violations) + " quantiles violate)");
            }

        for (UserKind k : {UserKind::Uav, UserKind::Gue})
            for (LinkDirection d : {LinkDirection::Uplink, LinkDirection::Downlink})
            {
                const SampleGroup g{k, d, Scheme::Before};
                const double m1 = median(s1, g), m3 = median(s3, g);
                const bool good = m3 < m1;
                ok = ok && good;
                res.details.push_back(verdict(good) + " (b) " + g.name() + " median K_u=3 " + num(m3, 2) +
                                      " dB < K_u=1 " + num(m1, 2) + " dB");
            }

        for (auto [ku, s] : {std::pair<int, const std::vector<SampleRecord> *>{1, &s1}, {3, &s3}})
        {
            const double mu = median(*s, {UserKind::Uav, LinkDirection::Downlink, Scheme::Before});
            const double mg = median(*s, {UserKind::Gue, LinkDirection::Downlink, Scheme::Before});
            const bool good = mu < mg;
            ok = ok && good;
            res.details.push_back(verdict(good) + " (c) K_u=" + std::to_string(ku) + " DL Before median UAV " +
                                  num(mu, 2) + " dB < GUE " + num(mg, 2) + " dB");
        }

        for (auto [ku, s] : {std::pair<int, const std::vector<SampleRecord> *>{1, &s1}, {3, &s3}})
            for (UserKind k : {UserKind::Uav, UserKind::Gue})
                for (LinkDirection d : {LinkDirection::Uplink, LinkDirection::Downlink})
                {
                    const double ma = median(*s, {k, d, Scheme::After});
                    const double mp = median(*s, {k, d, Scheme::Perfect});
                    const bool good = std::abs(ma - mp) <= 1.0;
                    ok = ok && good;
                    res.details.push_back(verdict(good) + " (d) K_u=" + std::to_string(ku) + " " +
                                          std::string(to_string(k)) + " " + std::string(to_string(d)) +
                                          " median After " + num(ma, 2) + " dB vs Perfect " + num(mp, 2) +
                                          " dB (|diff| <= 1 dB)");
                }
        return ok;
    }

    // ---------------------------------------------------------------- criterion 9
    bool criterion_determinism(CriterionResult &res, const ValidationOptions &opt)
    {
        ScenarioConfig cfg = reference_scenario();
        cfg.trials = 1000;
        cfg.seed = opt.seed;

        auto csv = [&](unsigned workers)
        {
            cfg.workers = workers;
            std::ostringstream out;
            write_samples_csv(out, run_trials(make_context(cfg)).samples);
            return out.str();
        };
        const std::string a = csv(1);
        const std::string b = csv(4);
        const bool same = !a.empty() && a == b;
        res.details.push_back(verdict(same) + " samples.csv of " + std::to_string(cfg.trials) +
                              " trials, 1 worker vs 4 workers: " + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()) + " bytes, " + (same ? "identical" : "different"));
        return same;
    }

    struct CriterionSpec
    {
        const char *title;
        double limit_seconds;
        bool (*run)(CriterionResult &, const ValidationOptions &);
    };

    const CriterionSpec criteria[num_criteria] = {
        {"projection exactness", 1.0, criterion_projection},
        {"concentration of inner products", 60.0, criterion_concentration},
        {"Table I reproduction, M = 4096", 300.0, criterion_table1},
        {"E-invariance before, unit slope after", 300.0, criterion_energy_sweep},
        {"finite-M convergence to the asymptotes", 600.0, criterion_convergence},
        {"detector quality", 60.0, criterion_detector},
        {"two-block identification", 120.0, criterion_two_block},
        {"figure-level properties, 10^4 trials", 900.0, criterion_figures},
        {"determinism across worker counts", 900.0, criterion_determinism},
    };
} // namespace

void uavpdc::EqualBetaSetup::validate() const
{
    if (num_antennas < 2)
        throw std::invalid_argument("Equal-gain network needs at least 2 antennas.");
    if (num_uavs < 1 || num_uavs >= num_users)
        throw std::invalid_argument("Equal-gain network needs 1 <= K_u < K.");
    if (!(beta > 0.0) || !(energy > 0.0) || !(pilot_gain > 0.0))
        throw std::invalid_argument("Equal-gain network needs positive beta, energy and pilot gain.");
}

std::vector<uavpdc::EqualBetaSinr> uavpdc::equal_beta_trial(const EqualBetaSetup &setup, std::span<const Scheme> schemes,
                                                            Rng &rng)
{
    setup.validate();
    const std::size_t K = (std::size_t)setup.num_users, Ku = (std::size_t)setup.num_uavs;
    const ArrayGeometry array = array_for(setup.num_antennas);
    const PowerBudget budget{setup.energy, setup.energy};
    const PilotConfig pilot{1.0, setup.pilot_gain};

    // h[l][k]: channel between BS l and user k (UAV links for every BS, GUE links only to the own BS)
    std::vector<std::vector<ChannelVector>> h(K, std::vector<ChannelVector>(K));
    std::vector<std::vector<Aoa>> aoa(K, std::vector<Aoa>(Ku));
    for (std::size_t l = 0; l < K; ++l)
    {
        for (std::size_t k = 0; k < Ku; ++k)
        {
            aoa[l][k] = random_aoa(rng);
            h[l][k] = gen_uav_channel(array, setup.beta, aoa[l][k], rng);
        }
        if (l >= Ku)
            h[l][l] = gen_gue_channel(setup.num_antennas, setup.beta, rng);
    }

    std::vector<ChannelVector> est(K);
    std::vector<std::vector<ChannelVector>> heard(K);
    std::vector<std::vector<Aoa>> heard_aoa(K);
    for (std::size_t l = 0; l < K; ++l)
    {
        for (std::size_t k = 0; k < Ku; ++k)
            if (k != l)
            {
                heard[l].push_back(h[l][k]);
                heard_aoa[l].push_back(aoa[l][k]);
            }
        est[l] = ls_estimate(h[l][l], heard[l], pilot, rng).vector;
    }

    std::vector<EqualBetaSinr> out;
    for (Scheme s : schemes)
    {
        std::vector<ChannelVector> used(K);
        for (std::size_t l = 0; l < K; ++l)
        {
            if (s == Scheme::Before)
                used[l] = est[l];
            else if (s == Scheme::Perfect)
                used[l] = perfect_pdc(est[l], heard_aoa[l], array).vector;
            else if (s == Scheme::TrueCsi)
                used[l] = h[l][l];
            else
                throw std::invalid_argument("Equal-gain network evaluates Before, Perfect and TrueCsi only.");
        }

        EqualBetaSinr r;
        for (std::size_t i = 0; i < K; ++i)
        {
            const double ul = uplink_sinr(used[i], h[i][i], heard[i], budget);
            if (i < Ku)
            {
                std::vector<ChannelVector> to_user(K);
                for (std::size_t l = 0; l < K; ++l)
                    to_user[l] = h[l][i];
                r.ul_uav += ul / (double)Ku;
                r.dl_uav += downlink_sinr_uav(to_user, used, i, budget) / (double)Ku;
            }
            else
            {
                r.ul_gue += ul / (double)(K - Ku);
                r.dl_gue += downlink_sinr_gue(h[i][i], used[i], budget) / (double)(K - Ku);
            }
        }
        out.push_back(r);
    }
    return out;
}

uavpdc::EqualBetaSinr uavpdc::equal_beta_asymptote(const EqualBetaSetup &setup, Scheme scheme)
{
    setup.validate();
    const PowerBudget budget{setup.energy, setup.energy};
    const PilotConfig pilot{1.0, setup.pilot_gain};
    const double b = setup.beta, noise = pilot.noise_variance();
    const int K = setup.num_users, Ku = setup.num_uavs;
    const double eta_uav = Ku * b + noise, eta_gue = (Ku + 1) * b + noise;

    AsymptoticInputs ul_uav{b, std::vector<double>((std::size_t)(Ku - 1), b), {}, {}};
    AsymptoticInputs ul_gue{b, std::vector<double>((std::size_t)Ku, b), {}, {}};
    AsymptoticInputs dl_uav{b, std::vector<double>((std::size_t)(K - 1), b), {}, eta_uav};
    for (int l = 1; l < K; ++l) // the UAV is served by BS 0; BSs 1..K_u-1 serve UAVs
        dl_uav.interferer_eta2.push_back(l < Ku ? eta_uav : eta_gue);
    AsymptoticInputs dl_gue{b, {}, {}, eta_gue};

    EqualBetaSinr r;
    r.ul_uav = asymptotic_sinr(scheme, LinkDirection::Uplink, UserKind::Uav, ul_uav, budget, pilot);
    r.ul_gue = asymptotic_sinr(scheme, LinkDirection::Uplink, UserKind::Gue, ul_gue, budget, pilot);
    r.dl_uav = asymptotic_sinr(scheme, LinkDirection::Downlink, UserKind::Uav, dl_uav, budget, pilot);
    r.dl_gue = asymptotic_sinr(scheme, LinkDirection::Downlink, UserKind::Gue, dl_gue, budget, pilot);
    return r;
}

uavpdc::CriterionResult uavpdc::run_criterion(int id, const ValidationOptions &options)
{
    if (id < 1 || id > num_criteria)
        throw std::invalid_argument("Criterion id must lie in 1.." + std::to_string(num_criteria) + ".");
    const CriterionSpec &spec = criteria[id - 1];
    CriterionResult res;
    res.id = id;
    res.title = spec.title;
    res.limit_seconds = spec.limit_seconds;
    const auto start = std::chrono::steady_clock::now();
    res.measurement_passed = spec.run(res, options);
    res.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return res;
}

std::string uavpdc::format_result(const CriterionResult &r)
{
    std::ostringstream out;
    out << (r.passed() ? "PASS" : "FAIL") << " [" << r.id << "] " << r.title << " (" << std::fixed
        << std::setprecision(1) << r.seconds << " s / limit " << r.limit_seconds << " s)\n";
    for (const std::string &d : r.details)
        out << "    " << d << '\n';
    return out.str();
}
