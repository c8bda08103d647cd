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

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace mmwchan::cli
{
    namespace fs = std::filesystem;

    namespace
    {
        std::ofstream open_out(const fs::path &path)
        {
            std::ofstream f(path);
            if (!f)
                throw std::runtime_error("cannot write '" + path.string() + "'");
            return f;
        }

        fs::path prepare_output(const ScenarioConfig &config)
        {
            const fs::path dir(config.output_dir);
            std::error_code ec;
            fs::create_directories(dir, ec);
            if (ec)
                throw std::runtime_error("cannot create output directory '" + dir.string() + "': " + ec.message());
            return dir;
        }

        void write_matrix_csv(std::ostream &os, const CMatrix &m)
        {
            const auto old = os.precision(17);
            for (Eigen::Index r = 0; r < m.rows(); ++r)
            {
                for (Eigen::Index c = 0; c < m.cols(); ++c)
                    os << (c ? "," : "") << '"' << m(r, c).real() << ',' << m(r, c).imag() << '"';
                os << '\n';
            }
            os.precision(old);
        }

        std::string fading_file_label(const FadingModel &f)
        {
            auto label = f.label();
            if (f.kind == FadingKind::rician && f.los == RicianLos::per_entry)
                label += "_per_entry";
            return label;
        }
    } // namespace

    ChannelImpulseResponse initial_cir(const ScenarioConfig &config)
    {
        if (!config.cir_import_path.empty())
            return import_cir_file(config.cir_import_path);
        auto gen = config.cir_gen;
        gen.rng_seed = derive_seed(config.master_seed, Stream::cir);
        return generate_initial_cir(gen, config.scenario);
    }

    TrackMeasurement simulate_local_track(const ChannelImpulseResponse &cir, const ScenarioConfig &config)
    {
        const ArrayGeometry track{config.track.positions, config.track.spacing_wavelengths};
        const auto corr = build_ula_corr_matrix(config.resolved_autocorr(), track,
                                                derive_seed(config.master_seed, Stream::rx_correlation),
                                                ArraySide::receive, config.corr_phase);
        const CMatrix s = matrix_sqrt_psd(corr);
        const CMatrix one = CMatrix::Identity(1, 1);
        Rng rng(derive_seed(config.master_seed, Stream::track));

        const double t0 = cir.components.front().delay;
        const double span_ns = s_to_ns(cir.components.back().delay - t0);
        const auto num_bins = static_cast<Eigen::Index>(std::floor(span_ns / config.track.delay_bin_ns)) + 1;
        CMatrix voltage = CMatrix::Zero(track.num_elements, num_bins);
        for (const auto &c : cir.components)
        {
            auto bin = static_cast<Eigen::Index>(std::floor(s_to_ns(c.delay - t0) / config.track.delay_bin_ns));
            bin = std::min(bin, num_bins - 1);
            voltage.col(bin) += draw_tap(s, one, config.fading.front(), c, rng).matrix.col(0);
        }

        TrackMeasurement out;
        out.amplitudes = voltage.cwiseAbs();
        out.delta_x = config.track.spacing_wavelengths;
        out.delay_bin_ns = config.track.delay_bin_ns;
        return out;
    }

    void cmd_simulate_cir(const ScenarioConfig &config, std::ostream &log)
    {
        const auto cir = initial_cir(config);
        const auto track = simulate_local_track(cir, config);
        const ArrayGeometry geo{config.track.positions, config.track.spacing_wavelengths};
        const auto corr = build_ula_corr_matrix(config.resolved_autocorr(), geo,
                                                derive_seed(config.master_seed, Stream::rx_correlation),
                                                ArraySide::receive, config.corr_phase);

        const auto dir = prepare_output(config);
        {
            auto f = open_out(dir / "cir.csv");
            export_cir(f, cir);
        }
        {
            auto f = open_out(dir / "track.csv");
            write_track(f, track);
        }
        {
            auto f = open_out(dir / "pdp.csv");
            f << std::setprecision(17) << "position_index,x_wavelengths,delay_ns,power_linear\n";
            for (Eigen::Index p = 0; p < track.num_positions(); ++p)
                for (Eigen::Index b = 0; b < track.num_bins(); ++b)
                {
                    const double a = track.amplitudes(p, b);
                    if (a > 0.0)
                        f << p << ',' << static_cast<double>(p) * track.delta_x << ','
                          << static_cast<double>(b) * track.delay_bin_ns << ',' << a * a << '\n';
                }
        }
        {
            auto f = open_out(dir / "corr_rx.csv");
            write_matrix_csv(f, corr.entries);
        }

        std::size_t occupied = 0;
        for (Eigen::Index b = 0; b < track.num_bins(); ++b)
            occupied += track.amplitudes.col(b).maxCoeff() > 0.0;
        log << to_string(cir.scenario) << ": " << cir.size() << " components, " << occupied << " occupied delay bins over "
            << track.num_positions() << " track positions\n"
            << "wrote " << (dir / "cir.csv").string() << ", " << (dir / "track.csv").string() << ", "
            << (dir / "pdp.csv").string() << ", " << (dir / "corr_rx.csv").string() << '\n';
    }

    void cmd_simulate_capacity(const ScenarioConfig &config, std::ostream &log)
    {
        struct Result
        {
            std::string label;
            std::vector<CapacitySample> samples;
        };
        std::vector<Result> results;
        for (const auto &f : config.fading)
            results.push_back({fading_file_label(f), run_monte_carlo(make_monte_carlo(config, f))});

        const auto dir = prepare_output(config);
        auto summary = open_out(dir / "summary.csv");
        summary << std::setprecision(17) << "model,drops,median_bps_hz,q10_bps_hz,q90_bps_hz\n";
        log << to_string(config.scenario) << ", " << config.rx_array.num_elements << "x" << config.tx_array.num_elements
            << " (rx x tx), SNR " << config.capacity.snr_db << " dB, " << config.num_drops << " drops\n";
        for (const auto &r : results)
        {
            {
                auto f = open_out(dir / ("capacity_" + r.label + ".csv"));
                write_samples_csv(f, r.samples);
            }
            {
                auto f = open_out(dir / ("cdf_" + r.label + ".csv"));
                write_cdf_csv(f, capacity_cdf(r.samples));
            }
            const auto v = capacities(r.samples);
            const double med = quantile(v, 0.5), q10 = quantile(v, 0.1), q90 = quantile(v, 0.9);
            summary << r.label << ',' << r.samples.size() << ',' << med << ',' << q10 << ',' << q90 << '\n';
            log << std::fixed << std::setprecision(4) << "  " << std::left << std::setw(14) << r.label << std::right
                << " median " << med << "  q10 " << q10 << "  q90 " << q90 << " b/s/Hz\n";
            log.unsetf(std::ios::floatfield);
        }
        log << "wrote " << dir.string() << "/{capacity_*,cdf_*,summary}.csv\n";
    }

    void cmd_estimate(const ScenarioConfig &config, const std::string &track_path, std::ostream &log)
    {
        const auto track = read_track_file(track_path);
        const auto curve = average_autocorr(track);
        FitOptions opt;
        opt.max_lag = config.estimate.max_lag_wavelengths;
        const auto fit = fit_autocorr_mmse(curve, opt);

        // pooled powers of the occupied bins, each bin normalized by its own mean
        std::vector<double> power;
        for (Eigen::Index b = 0; b < track.num_bins(); ++b)
        {
            const Eigen::VectorXd p = track.amplitudes.col(b).array().square();
            if (!(p.minCoeff() > 0.0))
                continue;
            const double mean = p.mean();
            for (Eigen::Index i = 0; i < p.size(); ++i)
                power.push_back(p(i) / mean);
        }
        std::optional<KFactorEstimate> k;
        if (power.size() >= 100)
            k = estimate_k_factor(power);

        const auto dir = prepare_output(config);
        {
            auto f = open_out(dir / "autocorr.csv");
            write_curve_csv(f, curve);
        }
        std::ostringstream report;
        report << std::setprecision(10) << "A = " << fit.params.a << "\nB = " << fit.params.b << "\nC = " << fit.params.c
               << "\nresidual_mse = " << fit.residual << "\nfit_points = " << fit.num_points
               << "\nidentifiable = " << (fit.identifiable ? "true" : "false") << "\nk_factor_db = ";
        if (!k)
            report << "unavailable (fewer than 100 positive power samples)";
        else if (k->status == KFactorStatus::non_rician)
            report << "-inf (non-Rician: spread at or above Rayleigh)";
        else if (k->status == KFactorStatus::no_fading)
            report << "inf (no fading)";
        else
            report << k->k_db;
        report << "\nk_factor_samples = " << power.size() << '\n';
        {
            auto f = open_out(dir / "estimate.txt");
            f << report.str();
        }
        log << report.str() << "wrote " << (dir / "autocorr.csv").string() << ", " << (dir / "estimate.txt").string() << '\n';
    }

    void cmd_dump_defaults(std::ostream &os)
    {
        os << "Spatial autocorrelation model: rho(dr) = A*exp(-B*dr) - C, dr in wavelengths\n";
        for (const auto &sc : all_scenarios())
        {
            const auto d = lookup_default_params(sc);
            if (d.autocorr)
                os << to_string(sc) << ": A=" << d.autocorr->a << " B=" << d.autocorr->b << " C=" << d.autocorr->c << '\n';
        }
        os << to_string(Environment::los_to_nlos) << " autocorr: unavailable\n"
           << "Rician K-factor ranges\n";
        for (const auto &sc : all_scenarios())
        {
            const auto d = lookup_default_params(sc);
            os << to_string(sc) << " K: " << d.k_range.lo_db << "-" << d.k_range.hi_db << " dB\n";
        }
    }

    int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
    {
        CLI::App app{"Statistical mmWave MIMO channel simulator and capacity analyzer"};
        app.require_subcommand(1);

        std::string config_path, out_dir, track_path;
        std::uint64_t seed = 0;
        std::size_t drops = 0;
        double snr_db = 0.0;

        auto add_common = [&](CLI::App *sub)
        {
            sub->add_option("--config", config_path, "Run configuration file")->check(CLI::ExistingFile);
            sub->add_option("--seed", seed, "Master seed (overrides the config)");
            sub->add_option("--out", out_dir, "Output directory (overrides the config)");
        };
        auto *sim_cir = app.add_subcommand("simulate-cir", "Initial CIR, local-area track and PDP grid");
        add_common(sim_cir);
        auto *sim_cap = app.add_subcommand("simulate-capacity", "Monte Carlo wideband capacity and CDFs");
        add_common(sim_cap);
        sim_cap->add_option("--drops", drops, "Number of Monte Carlo drops (overrides the config)")->check(CLI::PositiveNumber);
        sim_cap->add_option("--snr-db", snr_db, "Average SNR in dB (overrides the config)");
        auto *est = app.add_subcommand("estimate", "Autocorrelation curve, exponential fit and K factor of a track file");
        add_common(est);
        est->add_option("track", track_path, "Track file (defaults to estimate.track_path)");
        auto *dump = app.add_subcommand("dump-defaults", "Print the measured parameter tables");

        try
        {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError &e)
        {
            const int code = app.exit(e, out, err);
            return code == 0 ? 0 : 2;
        }

        try
        {
            if (*dump)
            {
                cmd_dump_defaults(out);
                return 0;
            }
            ScenarioConfig config;
            if (!config_path.empty())
                config = load_config(config_path);
            auto *active = app.get_subcommands().front();
            if (active->count("--seed"))
                config.master_seed = seed;
            if (active->count("--out"))
                config.output_dir = out_dir;
            if (*sim_cap && sim_cap->count("--drops"))
                config.num_drops = drops;
            if (*sim_cap && sim_cap->count("--snr-db"))
                config.capacity.snr_db = snr_db;
            config.validate();

            if (*sim_cir)
                cmd_simulate_cir(config, out);
            else if (*sim_cap)
                cmd_simulate_capacity(config, out);
            else if (*est)
            {
                const auto path = track_path.empty() ? config.estimate.track_path : track_path;
                if (path.empty())
                    throw ConfigError("estimate.track_path", "no track file given");
                cmd_estimate(config, path, out);
            }
            return 0;
        }
        catch (const ConfigError &e)
        {
            err << "config error: " << e.what() << '\n';
            return 2;
        }
        catch (const std::exception &e)
        {
            err << "error: " << e.what() << '\n';
            return 3;
        }
    }

} // namespace mmwchan::cli
