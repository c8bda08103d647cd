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

#include "commands.hpp"
#include "mmwchan/rng.hpp"

#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace mmwchan;
using Catch::Matchers::ContainsSubstring;
namespace fs = std::filesystem;

namespace
{
    struct RunResult
    {
        int code;
        std::string out;
        std::string err;
    };

    RunResult run_cli(std::vector<std::string> args)
    {
        args.insert(args.begin(), "mmwchan");
        std::vector<const char *> argv;
        for (const auto &a : args)
            argv.push_back(a.c_str());
        std::ostringstream out, err;
        const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
        return {code, out.str(), err.str()};
    }

    fs::path scratch(const std::string &name)
    {
        const auto dir = fs::temp_directory_path() / ("mmwchan_test_" + name);
        fs::remove_all(dir);
        fs::create_directories(dir);
        return dir;
    }

    std::string slurp(const fs::path &p)
    {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }

    void write_file(const fs::path &p, const std::string &text)
    {
        std::ofstream(p) << text;
    }

    std::string config_path(const char *name)
    {
        return std::string(MMWCHAN_SOURCE_DIR) + "/configs/" + name;
    }

    std::map<std::string, std::string> read_report(const fs::path &p)
    {
        std::map<std::string, std::string> kv;
        std::istringstream in(slurp(p));
        std::string line;
        while (std::getline(in, line))
        {
            const auto eq = line.find(" = ");
            if (eq != std::string::npos)
                kv[line.substr(0, eq)] = line.substr(eq + 3);
        }
        return kv;
    }

    void write_synthetic_track(const fs::path &p, const AutocorrParams &params, double k_db, int bins, std::uint64_t seed)
    {
        TrackMeasurement t;
        t.amplitudes = simulate_track_amplitudes(params, FadingModel::rician(k_db), 132, 0.5, bins, seed);
        std::ofstream f(p);
        write_track(f, t);
    }
} // namespace

TEST_CASE("dump-defaults prints the parameter tables", "[cli]")
{
    const auto r = run_cli({"dump-defaults"});
    CHECK(r.code == 0);
    CHECK_THAT(r.out, ContainsSubstring("NLOS V-V: A=0.9 B=1 C=-0.1"));
    CHECK_THAT(r.out, ContainsSubstring("LOS V-V: A=0.99 B=1.95 C=0"));
    CHECK_THAT(r.out, ContainsSubstring("NLOS V-H: A=1 B=2.6 C=0"));
    CHECK_THAT(r.out, ContainsSubstring("LOS V-H: A=1 B=0.9 C=0.05"));
    CHECK_THAT(r.out, ContainsSubstring("LOS V-V K: 9-15 dB"));
    CHECK_THAT(r.out, ContainsSubstring("LOS-to-NLOS V-H K: 6-10 dB"));
    CHECK_THAT(r.out, ContainsSubstring("LOS-to-NLOS autocorr: unavailable"));
}

TEST_CASE("config parsing", "[cli]")
{
    std::istringstream in("# comment\nseed = 9\n[rx]\nelements = 8  # trailing\n[fading]\nmodels = rayleigh, rician:15:per-entry\n"
                          "[cir]\nnum_clusters = 2-3\n[autocorr]\nparams = 1, 2.6, 0\nphase = none\n");
    const auto c = parse_config(in);
    CHECK(c.master_seed == 9);
    CHECK(c.rx_array.num_elements == 8);
    REQUIRE(c.fading.size() == 2);
    CHECK(c.fading[1].los == RicianLos::per_entry);
    CHECK(c.fading[1].k_factor_db == 15.0);
    CHECK(c.cir_gen.num_clusters == IntRange{2, 3});
    CHECK(c.resolved_autocorr() == AutocorrParams{1.0, 2.6, 0.0});
    CHECK(c.corr_phase == CorrPhaseModel::none);

    std::istringstream again(format_config(c));
    CHECK(format_config(parse_config(again)) == format_config(c));
}

TEST_CASE("config errors name the field", "[cli]")
{
    auto error_field = [](const std::string &text)
    {
        std::istringstream in(text);
        try
        {
            parse_config(in);
        }
        catch (const ConfigError &e)
        {
            return e.field();
        }
        return std::string("<none>");
    };
    CHECK(error_field("rx.elemnts = 3\n") == "rx.elemnts");
    CHECK(error_field("[rx]\nelements = 0\n") == "rx");
    CHECK(error_field("[capacity]\nsnr_db = loud\n") == "capacity.snr_db");
    CHECK(error_field("[fading]\nmodels = nakagami\n") == "fading.models");
    CHECK(error_field("seed = 1\nseed = 2\n") == "seed");
    CHECK(error_field("[autocorr]\nparams = 1, 1, -0.5\n") == "autocorr.params");
    CHECK(error_field("drops = 0\n") == "drops");

    std::istringstream l2n("[scenario]\nenvironment = LOS-to-NLOS\n");
    const auto c = parse_config(l2n);
    CHECK_THROWS_AS(c.resolved_autocorr(), ConfigError);
}

TEST_CASE("exit codes", "[cli]")
{
    CHECK(run_cli({}).code == 2);
    CHECK(run_cli({"simulate-capacity", "--config", "/nonexistent.cfg"}).code == 2);
    CHECK(run_cli({"--help"}).code == 0);

    const auto dir = scratch("exit");
    write_file(dir / "bad.cfg", "[rx]\nelements = -1\n");
    const auto bad = run_cli({"simulate-capacity", "--config", (dir / "bad.cfg").string()});
    CHECK(bad.code == 2);
    CHECK_THAT(bad.err, ContainsSubstring("rx"));

    write_file(dir / "missing.cfg", "cir.import_path = /no/such/cir.csv\n");
    const auto missing = run_cli({"simulate-cir", "--config", (dir / "missing.cfg").string(), "--out", dir.string()});
    CHECK(missing.code == 3);
    CHECK_THAT(missing.err, ContainsSubstring("/no/such/cir.csv"));

    const auto no_track = run_cli({"estimate", "--out", dir.string(), (dir / "none.csv").string()});
    CHECK(no_track.code == 3);
    CHECK_THAT(no_track.err, ContainsSubstring("none.csv"));
}

TEST_CASE("simulate-capacity writes reproducible CSVs", "[cli]")
{
    const auto dir = scratch("capacity");
    write_file(dir / "run.cfg", "seed = 3\ndrops = 1\n[rx]\nelements = 4\n[capacity]\nsubcarriers = 8\n"
                                "[fading]\nmodels = rayleigh, rician:5\n");
    const auto a = run_cli({"simulate-capacity", "--config", (dir / "run.cfg").string(), "--out", (dir / "a").string()});
    REQUIRE(a.code == 0);
    CHECK_THAT(a.out, ContainsSubstring("median"));
    const auto samples = slurp(dir / "a" / "capacity_rayleigh.csv");
    CHECK(std::count(samples.begin(), samples.end(), '\n') == 2);
    CHECK_THAT(samples, Catch::Matchers::StartsWith("drop_index,seed,capacity_bps_hz\n0,"));
    CHECK(fs::exists(dir / "a" / "cdf_rician_5db.csv"));
    CHECK(fs::exists(dir / "a" / "summary.csv"));

    const auto b = run_cli({"simulate-capacity", "--config", (dir / "run.cfg").string(), "--out", (dir / "b").string()});
    REQUIRE(b.code == 0);
    for (const auto *f : {"capacity_rayleigh.csv", "cdf_rayleigh.csv", "capacity_rician_5db.csv", "summary.csv"})
        CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));

    const auto c = run_cli({"simulate-capacity", "--config", (dir / "run.cfg").string(), "--out", (dir / "c").string(),
                            "--seed", "4", "--drops", "3", "--snr-db", "20"});
    REQUIRE(c.code == 0);
    const auto more = slurp(dir / "c" / "capacity_rayleigh.csv");
    CHECK(std::count(more.begin(), more.end(), '\n') == 4);
}

TEST_CASE("simulate-cir outputs round-trip through the importers", "[cli]")
{
    const auto dir = scratch("cir");
    const auto r = run_cli({"simulate-cir", "--config", config_path("fig4.cfg"), "--out", dir.string()});
    REQUIRE(r.code == 0);
    const auto cir = import_cir_file((dir / "cir.csv").string());
    CHECK(cir.scenario == Scenario{Environment::nlos, Polarization::vv});
    const auto track = read_track_file((dir / "track.csv").string());
    CHECK(track.num_positions() == 11);
    CHECK(track.delta_x == 0.5);

    std::ostringstream again;
    export_cir(again, cir);
    CHECK(again.str() == slurp(dir / "cir.csv"));
    std::ostringstream track_again;
    write_track(track_again, track);
    CHECK(track_again.str() == slurp(dir / "track.csv"));

    const auto r2 = run_cli({"simulate-cir", "--config", config_path("fig4.cfg"), "--out", (dir / "again").string()});
    REQUIRE(r2.code == 0);
    for (const auto *f : {"cir.csv", "track.csv", "pdp.csv", "corr_rx.csv"})
        CHECK(slurp(dir / f) == slurp(dir / "again" / f));
}

TEST_CASE("single-path CIR import puts every position in one delay bin", "[cli]")
{
    const auto dir = scratch("single");
    write_file(dir / "one.csv", "delay_ns,power_linear,phase_rad,aod_az_deg,aod_el_deg,aoa_az_deg,aoa_el_deg\n"
                                "120,1,0,0,0,0,0\n");
    write_file(dir / "run.cfg", "cir.import_path = " + (dir / "one.csv").string() + "\n");
    REQUIRE(run_cli({"simulate-cir", "--config", (dir / "run.cfg").string(), "--out", dir.string()}).code == 0);
    const auto track = read_track_file((dir / "track.csv").string());
    CHECK(track.num_bins() == 1);
    CHECK(track.amplitudes.minCoeff() > 0.0);
}

TEST_CASE("local-area PDPs stay level across the track", "[cli]")
{
    // Ensemble median power of each occupied delay bin, position by position.
    auto config = load_config(config_path("fig4.cfg"));
    const auto cir = cli::initial_cir(config);
    const int realizations = 400;
    std::vector<std::vector<std::vector<double>>> db; // [bin][position][realization]
    for (int r = 0; r < realizations; ++r)
    {
        // keep the CIR fixed, vary the small-scale draws
        config.master_seed = derive_seed(1000, static_cast<std::uint64_t>(r));
        const auto track = cli::simulate_local_track(cir, config);
        if (db.empty())
            db.assign(static_cast<std::size_t>(track.num_bins()),
                      std::vector<std::vector<double>>(static_cast<std::size_t>(track.num_positions())));
        for (Eigen::Index b = 0; b < track.num_bins(); ++b)
            for (Eigen::Index p = 0; p < track.num_positions(); ++p)
            {
                const double a = track.amplitudes(p, b);
                if (a > 0.0)
                    db[static_cast<std::size_t>(b)][static_cast<std::size_t>(p)].push_back(20.0 * std::log10(a));
            }
    }
    int occupied = 0;
    for (const auto &bin : db)
    {
        if (bin.front().empty())
            continue;
        ++occupied;
        double lo = INFINITY, hi = -INFINITY;
        for (const auto &pos : bin)
        {
            const double med = quantile(pos, 0.5);
            lo = std::min(lo, med);
            hi = std::max(hi, med);
        }
        CHECK(hi - lo < 6.0);
    }
    CHECK(occupied >= 1);
}

TEST_CASE("estimate recovers a synthetic LOS V-V track", "[cli]")
{
    const auto dir = scratch("estimate");
    write_synthetic_track(dir / "track.csv", {0.99, 1.95, 0.0}, 15.0, 2000, 8);
    const auto r = run_cli({"estimate", "--out", dir.string(), (dir / "track.csv").string()});
    REQUIRE(r.code == 0);
    const auto kv = read_report(dir / "estimate.txt");
    CHECK(std::abs(std::stod(kv.at("A")) - 0.99) <= 0.15);
    CHECK(std::abs(std::stod(kv.at("B")) - 1.95) <= 0.15);
    CHECK(std::abs(std::stod(kv.at("C")) - 0.0) <= 0.15);
    CHECK(kv.at("identifiable") == "true");
    CHECK(std::abs(std::stod(kv.at("k_factor_db")) - 15.0) <= 1.0);
    CHECK_THAT(slurp(dir / "autocorr.csv"), Catch::Matchers::StartsWith("lag_wavelengths,rho\n0,1"));
}

TEST_CASE("estimate on the NLOS V-V model: per-window means absorb the negative floor", "[cli]")
{
    // Removing each window's mean cancels the constant part of the correlation, so the fitted C
    // comes out near 0 rather than at the model's -0.1. A and C still fall within 0.15.
    const auto dir = scratch("estimate_floor");
    write_synthetic_track(dir / "track.csv", {0.9, 1.0, -0.1}, 8.0, 2000, 9);
    REQUIRE(run_cli({"estimate", "--out", dir.string(), (dir / "track.csv").string()}).code == 0);
    const auto kv = read_report(dir / "estimate.txt");
    const double c = std::stod(kv.at("C"));
    CHECK(std::abs(c + 0.1) <= 0.15);
    CHECK(std::abs(std::stod(kv.at("A")) - 0.9) <= 0.15);
    CHECK(std::abs(std::stod(kv.at("B")) - 1.0) <= 0.15);
}

TEST_CASE("estimate rejects a track without fluctuation", "[cli]")
{
    const auto dir = scratch("estimate_const");
    TrackMeasurement t;
    t.amplitudes = Eigen::MatrixXd::Constant(40, 3, 0.7);
    {
        std::ofstream f(dir / "flat.csv");
        write_track(f, t);
    }
    const auto r = run_cli({"estimate", "--out", dir.string(), (dir / "flat.csv").string()});
    CHECK(r.code == 3);
    CHECK_THAT(r.err, ContainsSubstring("no delay bin"));
}
