// SPDX-License-Identifier: Apache-2.0
//
// mmwchan - statistical mmWave MIMO channel simulator and capacity analyzer
// Copyright (C) 2026 The mmwchan Authors
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

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any criterion fails.

#include "mmwchan/capacity.hpp"
#include "mmwchan/cir_gen.hpp"
#include "mmwchan/config.hpp"
#include "mmwchan/estimators.hpp"
#include "mmwchan/rng.hpp"
#include "mmwchan/spatial_corr.hpp"

#include "oracles.hpp"

#include <chrono>
#include <cstring>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

using namespace mmwchan;

namespace
{
    // Pinned tolerances.
    constexpr double kAc1GainLo = 0.1;
    constexpr double kAc1GainHi = 0.6;
    constexpr double kAc1RuntimeS = 60.0;
    constexpr double kAc2MinGap = 0.05;
    constexpr double kAc2RuntimeS = 120.0;
    constexpr double kAc3Tol = 1e-9;
    constexpr double kAc4MaxErr = 0.02;
    constexpr int kAc4Draws = 100000;
    constexpr double kAc5Tol = 0.15;
    constexpr int kAc5Tracks = 10000;
    constexpr int kAc5Positions = 132;
    constexpr double kAc6TolDb = 1.0;
    constexpr int kAc6Samples = 100000;
    constexpr int kAc6Trials = 100;
    constexpr int kAc6MinHits = 95;
    constexpr int kAc7Tracks = 50;
    constexpr double kHermTol = 1e-12;
    constexpr double kDiagTol = 1e-12;
    constexpr double kEigTol = 1e-10;
    constexpr double kPowerTol = 1e-12;
    constexpr double kVoidNs = 25.0;

    using Clock = std::chrono::steady_clock;

    double seconds_since(Clock::time_point t0)
    {
        return std::chrono::duration<double>(Clock::now() - t0).count();
    }

    std::string config_path(const char *name)
    {
        return std::string(MMWCHAN_SOURCE_DIR) + "/configs/" + name;
    }

    // Median capacity per configured fading model, single worker.
    std::vector<double> median_capacities(const ScenarioConfig &config, double &elapsed)
    {
        const auto t0 = Clock::now();
        std::vector<double> medians;
        for (const auto &model : config.fading)
        {
            auto mc = make_monte_carlo(config, model);
            mc.num_workers = 1;
            medians.push_back(quantile(capacities(run_monte_carlo(mc)), 0.5));
        }
        elapsed = seconds_since(t0);
        return medians;
    }

    std::string fmt(double v, int prec = 4)
    {
        std::ostringstream s;
        s << std::fixed << std::setprecision(prec) << v;
        return s.str();
    }

    struct Outcome
    {
        bool pass;
        std::string detail;
    };

    Outcome ac1()
    {
        auto config = load_config(config_path("fig5.cfg"));
        double elapsed = 0.0;
        const auto m = median_capacities(config, elapsed); // rayleigh, rician 5, rician 15
        const double gain5 = m[1] - m[0];
        const double gain15 = m[2] - m[0];
        const double larger = std::max(gain5, gain15);
        const bool pass = gain5 > 0.0 && gain15 > 0.0 && larger >= kAc1GainLo && larger <= kAc1GainHi &&
                          elapsed < kAc1RuntimeS;
        return {pass, "1x20 medians rayleigh=" + fmt(m[0]) + " K5=" + fmt(m[1]) + " K15=" + fmt(m[2]) +
                          " larger gain=" + fmt(larger) + " b/s/Hz (band [" + fmt(kAc1GainLo, 1) + ", " +
                          fmt(kAc1GainHi, 1) + "]) runtime=" + fmt(elapsed, 1) + " s"};
    }

    Outcome ac2()
    {
        auto config = load_config(config_path("fig6.cfg"));
        double elapsed = 0.0;
        const auto m = median_capacities(config, elapsed);
        const double gap1 = m[0] - m[1];
        const double gap2 = m[1] - m[2];
        const bool pass = gap1 > kAc2MinGap && gap2 > kAc2MinGap && elapsed < kAc2RuntimeS;
        return {pass, "2x20 medians rayleigh=" + fmt(m[0]) + " K5=" + fmt(m[1]) + " K15=" + fmt(m[2]) + " gaps=" +
                          fmt(gap1) + "," + fmt(gap2) + " runtime=" + fmt(elapsed, 1) + " s"};
    }

    Outcome ac3()
    {
        CapacityConfig cfg;
        cfg.num_subcarriers = 16;
        cfg.snr_db = 10.0;
        CorrelatedTap tap{CMatrix::Ones(1, 1), 0.0, 1.0};
        const double siso = wideband_capacity(frequency_response({tap}, cfg), cfg, 1);

        cfg.snr_db = 0.0;
        CorrelatedTap simo{CMatrix::Ones(20, 1), 0.0, 1.0};
        const double ones = wideband_capacity(frequency_response({simo}, cfg), cfg, 1);

        const double e1 = std::abs(siso - std::log2(11.0));
        const double e2 = std::abs(ones - std::log2(21.0));
        const bool pass = e1 < kAc3Tol && e2 < kAc3Tol && std::abs(siso - 3.4594) < 5e-5;
        return {pass, "1x1=" + fmt(siso, 10) + " (err " + fmt(e1, 15) + ") 1x20 ones=" + fmt(ones, 10) + " (err " +
                          fmt(e2, 15) + ")"};
    }

    Outcome ac4()
    {
        const AutocorrParams params{0.9, 1.0, -0.1};
        const auto r_r = build_ula_corr_matrix(params, {20, 0.5}, 41, ArraySide::receive);
        const auto r_t = build_ula_corr_matrix(params, {2, 0.5}, 42, ArraySide::transmit);
        const CMatrix s_r = matrix_sqrt_psd(r_r);
        const CMatrix s_t = matrix_sqrt_psd(r_t);
        const Eigen::Index n = 40;
        CMatrix cov = CMatrix::Zero(n, n);
        Rng rng(derive_seed(43, static_cast<std::uint64_t>(Stream::fading)));
        const MultipathComponent unit{1.0, 0.0, 0.0, {}, {}};
        for (int i = 0; i < kAc4Draws; ++i)
        {
            const auto tap = draw_tap(s_r, s_t, FadingModel::rayleigh(), unit, rng);
            const Eigen::Map<const Eigen::VectorXcd> v(tap.matrix.data(), n);
            cov.noalias() += v * v.adjoint();
        }
        cov /= static_cast<double>(kAc4Draws);
        CMatrix expected(n, n);
        const CMatrix rt_t = r_t.entries.transpose();
        for (Eigen::Index a = 0; a < 2; ++a)
            for (Eigen::Index b = 0; b < 2; ++b)
                expected.block(a * 20, b * 20, 20, 20) = rt_t(a, b) * r_r.entries;
        const double err = (cov - expected).cwiseAbs().maxCoeff();
        return {err < kAc4MaxErr, "2x20 NLOS V-V, " + std::to_string(kAc4Draws) + " draws, max |entry error|=" + fmt(err)};
    }

    Outcome ac5()
    {
        bool pass = true;
        std::string detail;
        std::uint64_t seed = 500;
        for (const auto &sc : all_scenarios())
        {
            const auto defaults = lookup_default_params(sc);
            if (!defaults.autocorr)
                continue;
            const auto truth = *defaults.autocorr;
            const auto corr = build_ula_corr_matrix(truth, {kAc5Positions, 0.5}, ++seed, ArraySide::receive,
                                                    CorrPhaseModel::none);
            Rng rng(derive_seed(seed, static_cast<std::uint64_t>(Stream::track)));
            TrackMeasurement track;
            track.amplitudes = simulate_track_amplitudes(matrix_sqrt_psd(corr),
                                                         FadingModel::rician(defaults.k_range.hi_db), kAc5Tracks, rng);
            const auto fit = fit_autocorr_mmse(average_autocorr(track));
            const auto &p = fit.params;
            const bool ok = std::abs(p.a - truth.a) <= kAc5Tol && std::abs(p.b - truth.b) <= kAc5Tol &&
                            std::abs(p.c - truth.c) <= kAc5Tol;
            pass = pass && ok;
            detail += (detail.empty() ? "" : "; ") + to_string(sc) + " fit=(" + fmt(p.a, 3) + "," + fmt(p.b, 3) + "," +
                      fmt(p.c, 3) + ")" + (ok ? "" : " OUT");
        }
        return {pass, detail};
    }

    Outcome ac6()
    {
        bool pass = true;
        std::string detail;
        for (const double k_db : {3.0, 5.0, 9.0, 15.0})
        {
            int hits = 0;
            std::vector<double> power(kAc6Samples);
            for (int t = 0; t < kAc6Trials; ++t)
            {
                Rng rng(derive_seed(600 + static_cast<std::uint64_t>(k_db), static_cast<std::uint64_t>(t)));
                const auto h = sample_hw(1, kAc6Samples, FadingModel::rician(k_db, RicianLos::per_entry), rng);
                for (int i = 0; i < kAc6Samples; ++i)
                    power[static_cast<std::size_t>(i)] = std::norm(h(0, i));
                const auto est = estimate_k_factor(power);
                if (est.status == KFactorStatus::ok && std::abs(est.k_db - k_db) <= kAc6TolDb)
                    ++hits;
            }
            pass = pass && hits >= kAc6MinHits;
            detail += (detail.empty() ? "" : " ") + std::string("K=") + fmt(k_db, 0) + "dB:" + std::to_string(hits) + "/" +
                      std::to_string(kAc6Trials);
        }
        return {pass, detail};
    }

    Outcome ac7()
    {
        Rng rng(700);
        std::uniform_int_distribution<int> positions(2, 16);
        std::uniform_int_distribution<int> bins(1, 8);
        std::exponential_distribution<double> amp(1.0);
        std::bernoulli_distribution flat(0.1);
        int mismatches = 0;
        std::size_t compared = 0;
        for (int t = 0; t < kAc7Tracks; ++t)
        {
            TrackMeasurement track;
            track.amplitudes.resize(positions(rng), bins(rng));
            for (Eigen::Index b = 0; b < track.num_bins(); ++b)
            {
                const bool constant = flat(rng);
                for (Eigen::Index p = 0; p < track.num_positions(); ++p)
                    track.amplitudes(p, b) = constant ? 0.5 : amp(rng);
            }
            for (Eigen::Index b = 0; b < track.num_bins(); ++b)
            {
                std::vector<double> a(track.amplitudes.col(b).data(),
                                      track.amplitudes.col(b).data() + track.num_positions());
                const auto ref = oracle::brute_force_autocorr(a, kMinOverlap);
                const auto got = spatial_autocorrelation(track, b);
                if (got.values.size() != ref.size())
                {
                    ++mismatches;
                    continue;
                }
                for (std::size_t i = 0; i < ref.size(); ++i)
                {
                    ++compared;
                    if (ref[i].has_value() != got.values[i].has_value() ||
                        (ref[i] && std::memcmp(&*ref[i], &*got.values[i], sizeof(double)) != 0))
                        ++mismatches;
                }
            }
        }
        return {mismatches == 0, std::to_string(compared) + " lag values compared, " + std::to_string(mismatches) +
                                     " mismatches"};
    }

    Outcome ac8()
    {
        int bad_corr = 0;
        int matrices = 0;
        const std::vector<AutocorrParams> params = {
            {0.9, 1.0, -0.1}, {0.99, 1.95, 0.0}, {1.0, 2.6, 0.0}, {1.0, 0.9, 0.05}, {0.6, 0.05, -0.4}, {1.0, 0.0, 0.0}};
        for (const auto &p : params)
            for (const int n : {1, 2, 5, 20, 64})
                for (const double d : {0.25, 0.5, 1.0})
                    for (const auto phase : {CorrPhaseModel::independent, CorrPhaseModel::none})
                        for (std::uint64_t s = 0; s < 4; ++s)
                        {
                            const auto m = build_ula_corr_matrix(p, {n, d}, 800 + s, ArraySide::receive, phase);
                            ++matrices;
                            if (!is_valid_correlation(m.entries, kHermTol, kDiagTol, kEigTol))
                                ++bad_corr;
                        }

        int bad_cir = 0;
        const int cirs = 500;
        for (int i = 0; i < cirs; ++i)
        {
            CirGenConfig cfg;
            cfg.rng_seed = derive_seed(801, static_cast<std::uint64_t>(i));
            const auto &sc = all_scenarios()[static_cast<std::size_t>(i) % all_scenarios().size()];
            const auto clustered = generate_clustered_cir(cfg, sc);
            double total = 0.0;
            for (const auto &c : clustered.cir.components)
                total += c.power_gain;
            if (!check_cluster_voids(clustered.clusters, kVoidNs) || std::abs(total - 1.0) > kPowerTol ||
                !validate_cir(clustered.cir).empty())
                ++bad_cir;
        }

        auto config = load_config(config_path("fig6.cfg"));
        auto mc = make_monte_carlo(config, config.fading.front());
        mc.num_drops = 64;
        std::vector<std::vector<double>> runs;
        for (const unsigned workers : {1U, 2U, 4U, 1U})
        {
            mc.num_workers = workers;
            runs.push_back(capacities(run_monte_carlo(mc)));
        }
        bool deterministic = true;
        for (const auto &r : runs)
            deterministic = deterministic && r == runs.front();

        return {bad_corr == 0 && bad_cir == 0 && deterministic,
                std::to_string(matrices) + " correlation matrices (" + std::to_string(bad_corr) + " invalid), " +
                    std::to_string(cirs) + " CIRs (" + std::to_string(bad_cir) + " invalid), worker counts 1/2/4 " +
                    (deterministic ? "identical" : "DIFFER")};
    }
} // namespace

int main()
{
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria = {
        {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5}, {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}};
    int failures = 0;
    for (const auto &[name, check] : criteria)
    {
        Outcome o;
        try
        {
            o = check();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS " : "FAIL ") << name << ": " << o.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
