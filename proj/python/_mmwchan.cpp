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

#include "mmwchan/capacity.hpp"
#include "mmwchan/cir_gen.hpp"
#include "mmwchan/config.hpp"
#include "mmwchan/estimators.hpp"
#include "mmwchan/spatial_corr.hpp"

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <sstream>

namespace py = pybind11;
using namespace mmwchan;

namespace
{
    Scenario parse_scenario(const std::string &text)
    {
        const auto space = text.rfind(' ');
        if (space == std::string::npos)
            throw std::invalid_argument("scenario must read '<environment> <polarization>', got '" + text + "'");
        return {parse_environment(text.substr(0, space)), parse_polarization(text.substr(space + 1))};
    }

    CorrPhaseModel parse_phase(const std::string &text)
    {
        if (text == "independent")
            return CorrPhaseModel::independent;
        if (text == "none")
            return CorrPhaseModel::none;
        throw std::invalid_argument("phase must be 'independent' or 'none', got '" + text + "'");
    }

    AutocorrParams to_params(const std::tuple<double, double, double> &t)
    {
        AutocorrParams p{std::get<0>(t), std::get<1>(t), std::get<2>(t)};
        p.validate();
        return p;
    }

    TrackMeasurement to_track(const Eigen::MatrixXd &amplitudes, double delta_x)
    {
        TrackMeasurement t;
        t.amplitudes = amplitudes;
        t.delta_x = delta_x;
        t.validate();
        return t;
    }

    py::dict curve_dict(const AutocorrCurve &c)
    {
        py::dict d;
        d["lags"] = c.lags;
        d["values"] = c.values;
        return d;
    }

    py::dict component_dict(const MultipathComponent &c)
    {
        py::dict d;
        d["delay_ns"] = s_to_ns(c.delay);
        d["power"] = c.power_gain;
        d["phase_rad"] = c.phase;
        d["aod_az_deg"] = rad_to_deg(c.aod.azimuth);
        d["aod_el_deg"] = rad_to_deg(c.aod.elevation);
        d["aoa_az_deg"] = rad_to_deg(c.aoa.azimuth);
        d["aoa_el_deg"] = rad_to_deg(c.aoa.elevation);
        return d;
    }

    py::dict cir_dict(const ChannelImpulseResponse &cir)
    {
        py::list comps;
        for (const auto &c : cir.components)
            comps.append(component_dict(c));
        py::dict d;
        d["scenario"] = to_string(cir.scenario);
        d["components"] = comps;
        return d;
    }
} // namespace

PYBIND11_MODULE(_mmwchan, m)
{
    m.doc() = "Statistical mmWave MIMO channel simulator and capacity analyzer";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def("scenarios", []
          {
              std::vector<std::string> out;
              for (const auto &sc : all_scenarios())
                  out.push_back(to_string(sc));
              return out;
          });

    m.def(
        "default_params",
        [](const std::string &scenario)
        {
            const auto d = lookup_default_params(parse_scenario(scenario));
            py::dict out;
            if (d.autocorr)
                out["autocorr"] = py::make_tuple(d.autocorr->a, d.autocorr->b, d.autocorr->c);
            else
                out["autocorr"] = py::none();
            out["k_range_db"] = py::make_tuple(d.k_range.lo_db, d.k_range.hi_db);
            return out;
        },
        py::arg("scenario"));

    m.def(
        "eval_autocorr", [](const std::tuple<double, double, double> &p, double dr) { return eval_autocorr(to_params(p), dr); },
        py::arg("params"), py::arg("dr"));

    m.def(
        "ula_correlation",
        [](const std::tuple<double, double, double> &p, int n, double spacing, std::uint64_t seed, const std::string &phase)
        {
            return build_ula_corr_matrix(to_params(p), {n, spacing}, seed, ArraySide::receive, parse_phase(phase)).entries;
        },
        py::arg("params"), py::arg("num_elements"), py::arg("spacing_wavelengths") = 0.5, py::arg("seed") = 0,
        py::arg("phase") = "independent");

    m.def("repair_to_correlation", &repair_to_correlation, py::arg("matrix"));
    m.def("is_valid_correlation", &is_valid_correlation, py::arg("matrix"), py::arg("herm_tol") = 1e-12,
          py::arg("diag_tol") = 1e-12, py::arg("eig_tol") = 1e-10);
    m.def("matrix_sqrt_psd", py::overload_cast<const CMatrix &>(&matrix_sqrt_psd), py::arg("matrix"));

    m.def(
        "generate_cir",
        [](const std::string &scenario, std::uint64_t seed)
        {
            CirGenConfig cfg;
            cfg.rng_seed = seed;
            return cir_dict(generate_initial_cir(cfg, parse_scenario(scenario)));
        },
        py::arg("scenario") = "NLOS V-V", py::arg("seed") = 0);

    m.def("read_cir", [](const std::string &path) { return cir_dict(import_cir_file(path)); }, py::arg("path"));

    m.def("narrowband_capacity", &narrowband_capacity, py::arg("h"), py::arg("snr_linear"), py::arg("n_t"));

    m.def(
        "simulate_capacity",
        [](const std::string &config_path, std::optional<std::size_t> drops, std::optional<std::uint64_t> seed)
        {
            auto config = load_config(config_path);
            if (drops)
                config.num_drops = *drops;
            if (seed)
                config.master_seed = *seed;
            config.validate();
            py::dict out;
            for (const auto &model : config.fading)
            {
                std::vector<double> caps;
                {
                    py::gil_scoped_release release;
                    caps = capacities(run_monte_carlo(make_monte_carlo(config, model)));
                }
                out[py::str(model.label())] = caps;
            }
            return out;
        },
        py::arg("config_path"), py::arg("drops") = py::none(), py::arg("seed") = py::none());

    m.def(
        "simulate_track",
        [](const std::tuple<double, double, double> &p, double k_db, int num_positions, int num_bins, double spacing,
           std::uint64_t seed)
        {
            const auto fading = std::isinf(k_db) && k_db < 0 ? FadingModel::rayleigh() : FadingModel::rician(k_db);
            return simulate_track_amplitudes(to_params(p), fading, num_positions, spacing, num_bins, seed);
        },
        py::arg("params"), py::arg("k_db"), py::arg("num_positions"), py::arg("num_bins") = 1,
        py::arg("spacing_wavelengths") = 0.5, py::arg("seed") = 0);

    m.def(
        "spatial_autocorrelation",
        [](const Eigen::MatrixXd &amplitudes, double delta_x, Eigen::Index bin)
        { return curve_dict(spatial_autocorrelation(to_track(amplitudes, delta_x), bin)); },
        py::arg("amplitudes"), py::arg("delta_x") = 0.5, py::arg("bin") = 0);

    m.def(
        "average_autocorr", [](const Eigen::MatrixXd &amplitudes, double delta_x)
        { return curve_dict(average_autocorr(to_track(amplitudes, delta_x))); },
        py::arg("amplitudes"), py::arg("delta_x") = 0.5);

    m.def(
        "fit_autocorr",
        [](const std::vector<double> &lags, const std::vector<std::optional<double>> &values, double max_lag)
        {
            if (lags.size() != values.size())
                throw std::invalid_argument("lags and values differ in length");
            FitOptions options;
            options.max_lag = max_lag;
            const auto fit = fit_autocorr_mmse({lags, values}, options);
            py::dict out;
            out["params"] = py::make_tuple(fit.params.a, fit.params.b, fit.params.c);
            out["residual"] = fit.residual;
            out["identifiable"] = fit.identifiable;
            out["num_points"] = fit.num_points;
            return out;
        },
        py::arg("lags"), py::arg("values"), py::arg("max_lag") = 5.0);

    m.def(
        "estimate_k_factor",
        [](const std::vector<double> &power)
        {
            const auto est = estimate_k_factor(power);
            py::dict out;
            out["k_db"] = est.k_db;
            out["status"] = est.status == KFactorStatus::ok ? "ok"
                            : est.status == KFactorStatus::non_rician ? "non_rician"
                                                                      : "no_fading";
            return out;
        },
        py::arg("power"));

    m.def("empirical_cdf", [](std::vector<double> values)
          {
              std::vector<std::pair<double, double>> out;
              for (const auto &p : empirical_cdf(std::move(values)))
                  out.emplace_back(p.value, p.cum_prob);
              return out;
          },
          py::arg("values"));
}
