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

#ifndef MMWCHAN_CONFIG_HPP
#define MMWCHAN_CONFIG_HPP

#include "mmwchan/capacity.hpp"
#include "mmwchan/cir_gen.hpp"
#include "mmwchan/spatial_corr.hpp"

#include <cstdint>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mmwchan
{
    // A configuration problem tied to one key, e.g. "rx.elements: must be >= 1".
    class ConfigError : public std::runtime_error
    {
    public:
        ConfigError(std::string field, const std::string &message);
        const std::string &field() const { return field_; }

    private:
        std::string field_;
    };

    struct TrackConfig
    {
        int positions = 11;
        double spacing_wavelengths = 0.5;
        double delay_bin_ns = 2.5;
    };

    struct EstimateConfig
    {
        std::string track_path;
        double max_lag_wavelengths = 5.0;
    };

    // Everything one run needs. All randomness flows from master_seed.
    struct ScenarioConfig
    {
        Scenario scenario;
        CirGenConfig cir_gen;
        std::string cir_import_path; // empty: generate
        bool regenerate_cir = true;
        ArrayGeometry tx_array{1, 0.5};
        ArrayGeometry rx_array{20, 0.5};
        std::vector<FadingModel> fading{FadingModel::rician(5.0)}; // capacity runs once per model
        std::optional<AutocorrParams> autocorr;                    // nullopt: table default of the scenario
        CorrPhaseModel corr_phase = CorrPhaseModel::independent;
        CapacityConfig capacity;
        std::size_t num_drops = 100;
        std::uint64_t master_seed = 1;
        unsigned num_workers = 0;
        std::string output_dir = "out";
        TrackConfig track;
        EstimateConfig estimate;

        // Explicit parameters, else the scenario's table entry. Throws ConfigError when neither exists.
        AutocorrParams resolved_autocorr() const;
        void validate() const; // throws ConfigError naming the field
    };

    // Flat "key = value" text. '#' starts a comment, "[section]" prefixes the following keys with
    // "section.". Unknown or repeated keys are errors.
    ScenarioConfig parse_config(std::istream &is, const std::string &source = "<config>");
    ScenarioConfig load_config(const std::string &path);

    // Canonical text form, parseable by parse_config.
    std::string format_config(const ScenarioConfig &config);

    // "rayleigh", "rician:5", "rician:15:per-entry"
    FadingModel parse_fading(const std::string &text);
    std::string format_fading(const FadingModel &fading);

    MonteCarloConfig make_monte_carlo(const ScenarioConfig &config, const FadingModel &fading);

} // namespace mmwchan

#endif
