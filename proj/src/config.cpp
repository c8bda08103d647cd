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

#include "mmwchan/config.hpp"
#include "mmwchan/text_util.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace mmwchan
{
    ConfigError::ConfigError(std::string field, const std::string &message)
        : std::runtime_error(field.empty() ? message : field + ": " + message), field_(std::move(field))
    {
    }

    namespace
    {
        std::string lower(std::string_view s)
        {
            std::string out(s);
            for (auto &ch : out)
                ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
            return out;
        }

        std::string shortest(double v)
        {
            std::array<char, 64> buf{};
            const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
            return std::string(buf.data(), ptr);
        }

        double to_double(const std::string &key, std::string_view v)
        {
            auto d = parse_double(v);
            if (!d)
                throw ConfigError(key, "expected a number, got '" + std::string(trim(v)) + "'");
            return *d;
        }

        int to_int(const std::string &key, std::string_view v)
        {
            auto i = parse_int(v);
            if (!i || *i < std::numeric_limits<int>::min() || *i > std::numeric_limits<int>::max())
                throw ConfigError(key, "expected an integer, got '" + std::string(trim(v)) + "'");
            return static_cast<int>(*i);
        }

        std::uint64_t to_u64(const std::string &key, std::string_view v)
        {
            auto u = parse_uint(v);
            if (!u)
                throw ConfigError(key, "expected a non-negative 64-bit integer, got '" + std::string(trim(v)) + "'");
            return *u;
        }

        bool to_bool(const std::string &key, std::string_view v)
        {
            const auto s = lower(trim(v));
            if (s == "true" || s == "yes" || s == "1" || s == "on")
                return true;
            if (s == "false" || s == "no" || s == "0" || s == "off")
                return false;
            throw ConfigError(key, "expected true or false, got '" + std::string(trim(v)) + "'");
        }

        // "3", "1-6"
        IntRange to_range(const std::string &key, std::string_view v)
        {
            v = trim(v);
            const auto dash = v.find('-', 1);
            if (dash == std::string_view::npos)
            {
                const int n = to_int(key, v);
                return {n, n};
            }
            return {to_int(key, v.substr(0, dash)), to_int(key, v.substr(dash + 1))};
        }

        std::string format_range(const IntRange &r)
        {
            return r.lo == r.hi ? std::to_string(r.lo) : std::to_string(r.lo) + "-" + std::to_string(r.hi);
        }

        using Setter = std::function<void(ScenarioConfig &, const std::string &, std::string_view)>;

        const std::map<std::string, Setter> &setters()
        {
            static const std::map<std::string, Setter> table = {
                {"scenario.environment",
                 [](ScenarioConfig &c, const std::string &k, std::string_view v)
                 {
                     try
                     {
                         c.scenario.environment = parse_environment(trim(v));
                     }
                     catch (const std::invalid_argument &e)
                     {
                         throw ConfigError(k, e.what());
                     }
                 }},
                {"scenario.polarization",
                 [](ScenarioConfig &c, const std::string &k, std::string_view v)
                 {
                     try
                     {
                         c.scenario.polarization = parse_polarization(trim(v));
                     }
                     catch (const std::invalid_argument &e)
                     {
                         throw ConfigError(k, e.what());
                     }
                 }},
                {"seed", [](ScenarioConfig &c, const std::string &k, std::string_view v) { c.master_seed = to_u64(k, v); }},
                {"drops", [](ScenarioConfig &c, const std::string &k, std::string_view v) { c.num_drops = to_u64(k, v); }},
                {"workers", [](ScenarioConfig &c, const std::string &k, std::string_view v)
                 { c.num_workers = static_cast<unsigned>(to_u64(k, v)); }},
                {"output_dir", [](ScenarioConfig &c, const std::string &, std::string_view v) { c.output_dir = trim(v); }},
                {"cir.import_path", [](ScenarioConfig &c, const std::string &, std::string_view v) { c.cir_import_path = trim(v); }},
                {"cir.regenerate", [](ScenarioConfig &c, const std::string &k, std::string_view v) { c.regenerate_cir = to_bool(k, v); }},
                {"cir.num_clusters", [](ScenarioConfig &c, const std::string &k, std::string_view v) { c.cir_gen.num_clusters = to_range(k, v); }},
                {"cir.paths_per_cluster", [](ScenarioConfig &c, const std::string &k, std::string_view v)
                 { c.cir_gen.paths_per_cluster = to_range(k, v); }},
                {"cir.num_lobes", [](ScenarioConfig &c, const std::string &k, std::string_view v) { c.cir_gen.num_lobes = to_range(k, v); }},
                {"cir.void_ns", [](ScenarioConfig &c, const std::string &k, std::string_view v)
                 { c.cir_gen.intercluster_void_ns = to_double(k, v); }},
                {"cir.cluster_decay_ns", [](ScenarioConfig &c, const std::string &k, std::string_view v)
                 { c.cir_gen.cluster_decay_ns = to_double(k, v); }},
                {"cir.intracluster_decay_ns", [](ScenarioConfig &c, const std::string &k, std::string_view v)
                 { c.cir_gen.intracluster_decay_ns = to_double(k, v); }},
                {"cir.cluster_excess_mean_ns", [](ScenarioConfig &c, const std::string &k, std::string_view v)
                 { c.cir_gen.cluster_excess_mean_ns = to_double(k, v); }},
                {"cir.subpath_spacing_ns", [](ScenarioConfig &c, const std::string &k, std::string_view v)
                 { c.cir_gen.subpath_spacing_ns = to_double(k, v); }},
                {"cir.max_excess_delay_ns", [](ScenarioConfig &c, const std::string &k, std::string_view v)
                 { c.cir_gen.max_excess_delay_ns = to_double(k, v); }},
                {"cir.lobe_spread_deg", [](ScenarioConfig &c, const std::string &k, std::string_view v)
                 { c.cir_gen.lobe_angular_spread_deg = to_double(k, v); }},
                {"rx.elements", [](ScenarioConfig &c, const std::string &k, std::string_view v) { c.rx_array.num_elements = to_int(k, v); }},
                {"rx.spacing_wavelengths", [](ScenarioConfig &c, const std::string &k, std::string_view v)
                 { c.rx_array.spacing_wavelengths = to_double(k, v); }},
                {"tx.elements", [](ScenarioConfig &c, const std::string &k, std::string_view v) { c.tx_array.num_elements = to_int(k, v); }},
                {"tx.spacing_wavelengths", [](ScenarioConfig &c, const std::string &k, std::string_view v)
                 { c.tx_array.spacing_wavelengths = to_double(k, v); }},
                {"fading.models",
                 [](ScenarioConfig &c, const std::string &k, std::string_view v)
                 {
                     c.fading.clear();
                     for (auto item : split(v, ','))
                     {
                         try
                         {
                             c.fading.push_back(parse_fading(std::string(trim(item))));
                         }
                         catch (const std::invalid_argument &e)
                         {
                             throw ConfigError(k, e.what());
                         }
                     }
                 }},
                {"autocorr.params",
                 [](ScenarioConfig &c, const std::string &k, std::string_view v)
                 {
                     if (lower(trim(v)) == "table-default")
                     {
                         c.autocorr.reset();
                         return;
                     }
                     const auto parts = split(v, ',');
                     if (parts.size() != 3)
                         throw ConfigError(k, "expected 'table-default' or 'A, B, C'");
                     c.autocorr = AutocorrParams{to_double(k, parts[0]), to_double(k, parts[1]), to_double(k, parts[2])};
                 }},
                {"autocorr.phase",
                 [](ScenarioConfig &c, const std::string &k, std::string_view v)
                 {
                     const auto s = lower(trim(v));
                     if (s == "independent")
                         c.corr_phase = CorrPhaseModel::independent;
                     else if (s == "none")
                         c.corr_phase = CorrPhaseModel::none;
                     else
                         throw ConfigError(k, "expected 'independent' or 'none'");
                 }},
                {"capacity.bandwidth_hz", [](ScenarioConfig &c, const std::string &k, std::string_view v)
                 { c.capacity.bandwidth_hz = to_double(k, v); }},
                {"capacity.subcarriers", [](ScenarioConfig &c, const std::string &k, std::string_view v)
                 { c.capacity.num_subcarriers = to_int(k, v); }},
                {"capacity.snr_db", [](ScenarioConfig &c, const std::string &k, std::string_view v) { c.capacity.snr_db = to_double(k, v); }},
                {"capacity.center_frequency_hz", [](ScenarioConfig &c, const std::string &k, std::string_view v)
                 { c.capacity.center_frequency_hz = to_double(k, v); }},
                {"track.positions", [](ScenarioConfig &c, const std::string &k, std::string_view v) { c.track.positions = to_int(k, v); }},
                {"track.spacing_wavelengths", [](ScenarioConfig &c, const std::string &k, std::string_view v)
                 { c.track.spacing_wavelengths = to_double(k, v); }},
                {"track.delay_bin_ns", [](ScenarioConfig &c, const std::string &k, std::string_view v)
                 { c.track.delay_bin_ns = to_double(k, v); }},
                {"estimate.track_path", [](ScenarioConfig &c, const std::string &, std::string_view v) { c.estimate.track_path = trim(v); }},
                {"estimate.max_lag_wavelengths", [](ScenarioConfig &c, const std::string &k, std::string_view v)
                 { c.estimate.max_lag_wavelengths = to_double(k, v); }},
            };
            return table;
        }

        template <class F>
        void wrap(const char *field, F &&f)
        {
            try
            {
                f();
            }
            catch (const std::invalid_argument &e)
            {
                throw ConfigError(field, e.what());
            }
        }
    } // namespace

    FadingModel parse_fading(const std::string &text)
    {
        const auto parts = split(text, ':');
        const auto kind = lower(trim(parts[0]));
        if (kind == "rayleigh" && parts.size() == 1)
            return FadingModel::rayleigh();
        if (kind == "rician" && (parts.size() == 2 || parts.size() == 3))
        {
            const auto k_text = lower(trim(parts[1]));
            std::optional<double> k = k_text == "inf" ? std::optional<double>(std::numeric_limits<double>::infinity()) : parse_double(k_text);
            if (!k)
                throw std::invalid_argument("bad Rician K factor '" + std::string(trim(parts[1])) + "' in '" + text + "'");
            auto los = RicianLos::coherent;
            if (parts.size() == 3)
            {
                const auto mode = lower(trim(parts[2]));
                if (mode == "per-entry")
                    los = RicianLos::per_entry;
                else if (mode != "coherent")
                    throw std::invalid_argument("bad Rician LOS mode '" + mode + "' (expected coherent or per-entry)");
            }
            auto f = FadingModel::rician(*k, los);
            f.validate();
            return f;
        }
        throw std::invalid_argument("bad fading model '" + text + "' (expected rayleigh or rician:<K dB>[:coherent|:per-entry])");
    }

    std::string format_fading(const FadingModel &fading)
    {
        if (fading.kind == FadingKind::rayleigh)
            return "rayleigh";
        std::string out = "rician:" + (std::isinf(fading.k_factor_db) ? std::string("inf") : shortest(fading.k_factor_db));
        if (fading.los == RicianLos::per_entry)
            out += ":per-entry";
        return out;
    }

    AutocorrParams ScenarioConfig::resolved_autocorr() const
    {
        if (autocorr)
            return *autocorr;
        const auto defaults = lookup_default_params(scenario);
        if (!defaults.autocorr)
            throw ConfigError("autocorr.params", "no measured autocorrelation model for " + to_string(scenario) +
                                                     "; give 'A, B, C' explicitly");
        return *defaults.autocorr;
    }

    void ScenarioConfig::validate() const
    {
        if (cir_import_path.empty())
            wrap("cir", [&] { cir_gen.validate(); });
        wrap("rx", [&] { rx_array.validate(); });
        wrap("tx", [&] { tx_array.validate(); });
        if (fading.empty())
            throw ConfigError("fading.models", "at least one fading model is required");
        wrap("fading.models", [&] { for (const auto &f : fading) f.validate(); });
        if (autocorr)
            wrap("autocorr.params", [&] { autocorr->validate(); });
        wrap("capacity", [&] { capacity.validate(); });
        if (num_drops < 1)
            throw ConfigError("drops", "must be >= 1");
        if (track.positions < 2)
            throw ConfigError("track.positions", "must be >= 2");
        if (!(track.spacing_wavelengths > 0.0))
            throw ConfigError("track.spacing_wavelengths", "must be > 0");
        if (!(track.delay_bin_ns > 0.0))
            throw ConfigError("track.delay_bin_ns", "must be > 0");
        if (!(estimate.max_lag_wavelengths > 0.0))
            throw ConfigError("estimate.max_lag_wavelengths", "must be > 0");
        if (output_dir.empty())
            throw ConfigError("output_dir", "must not be empty");
    }

    ScenarioConfig parse_config(std::istream &is, const std::string &source)
    {
        ScenarioConfig config;
        std::set<std::string> seen;
        std::string section;
        std::string line;
        std::size_t line_no = 0;
        while (std::getline(is, line))
        {
            ++line_no;
            const auto hash = line.find('#');
            const auto text = trim(std::string_view(line).substr(0, hash));
            if (text.empty())
                continue;
            const auto where = source + ":" + std::to_string(line_no);
            if (text.front() == '[')
            {
                if (text.back() != ']')
                    throw ConfigError("", where + ": malformed section header");
                section = lower(trim(text.substr(1, text.size() - 2)));
                continue;
            }
            const auto eq = text.find('=');
            if (eq == std::string_view::npos)
                throw ConfigError("", where + ": expected 'key = value'");
            auto key = lower(trim(text.substr(0, eq)));
            if (!section.empty())
                key = section + "." + key;
            const auto value = trim(text.substr(eq + 1));
            const auto &table = setters();
            const auto it = table.find(key);
            if (it == table.end())
                throw ConfigError(key, "unknown key (" + where + ")");
            if (!seen.insert(key).second)
                throw ConfigError(key, "given twice (" + where + ")");
            it->second(config, key, value);
        }
        config.validate();
        return config;
    }

    ScenarioConfig load_config(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw ConfigError("--config", "cannot open '" + path + "'");
        return parse_config(in, path);
    }

    std::string format_config(const ScenarioConfig &c)
    {
        std::ostringstream os;
        const auto &g = c.cir_gen;
        os << "scenario.environment = " << to_string(c.scenario.environment) << '\n'
           << "scenario.polarization = " << to_string(c.scenario.polarization) << '\n'
           << "seed = " << c.master_seed << '\n'
           << "drops = " << c.num_drops << '\n'
           << "workers = " << c.num_workers << '\n'
           << "output_dir = " << c.output_dir << '\n';
        if (!c.cir_import_path.empty())
            os << "cir.import_path = " << c.cir_import_path << '\n';
        os << "cir.regenerate = " << (c.regenerate_cir ? "true" : "false") << '\n'
           << "cir.num_clusters = " << format_range(g.num_clusters) << '\n'
           << "cir.paths_per_cluster = " << format_range(g.paths_per_cluster) << '\n'
           << "cir.num_lobes = " << format_range(g.num_lobes) << '\n'
           << "cir.void_ns = " << shortest(g.intercluster_void_ns) << '\n'
           << "cir.cluster_decay_ns = " << shortest(g.cluster_decay_ns) << '\n'
           << "cir.intracluster_decay_ns = " << shortest(g.intracluster_decay_ns) << '\n'
           << "cir.cluster_excess_mean_ns = " << shortest(g.cluster_excess_mean_ns) << '\n'
           << "cir.subpath_spacing_ns = " << shortest(g.subpath_spacing_ns) << '\n'
           << "cir.max_excess_delay_ns = " << shortest(g.max_excess_delay_ns) << '\n'
           << "cir.lobe_spread_deg = " << shortest(g.lobe_angular_spread_deg) << '\n'
           << "rx.elements = " << c.rx_array.num_elements << '\n'
           << "rx.spacing_wavelengths = " << shortest(c.rx_array.spacing_wavelengths) << '\n'
           << "tx.elements = " << c.tx_array.num_elements << '\n'
           << "tx.spacing_wavelengths = " << shortest(c.tx_array.spacing_wavelengths) << '\n'
           << "fading.models = ";
        for (std::size_t i = 0; i < c.fading.size(); ++i)
            os << (i ? ", " : "") << format_fading(c.fading[i]);
        os << '\n' << "autocorr.params = ";
        if (c.autocorr)
            os << shortest(c.autocorr->a) << ", " << shortest(c.autocorr->b) << ", " << shortest(c.autocorr->c);
        else
            os << "table-default";
        os << '\n'
           << "autocorr.phase = " << (c.corr_phase == CorrPhaseModel::none ? "none" : "independent") << '\n'
           << "capacity.bandwidth_hz = " << shortest(c.capacity.bandwidth_hz) << '\n'
           << "capacity.subcarriers = " << c.capacity.num_subcarriers << '\n'
           << "capacity.snr_db = " << shortest(c.capacity.snr_db) << '\n'
           << "capacity.center_frequency_hz = " << shortest(c.capacity.center_frequency_hz) << '\n'
           << "track.positions = " << c.track.positions << '\n'
           << "track.spacing_wavelengths = " << shortest(c.track.spacing_wavelengths) << '\n'
           << "track.delay_bin_ns = " << shortest(c.track.delay_bin_ns) << '\n';
        if (!c.estimate.track_path.empty())
            os << "estimate.track_path = " << c.estimate.track_path << '\n';
        os << "estimate.max_lag_wavelengths = " << shortest(c.estimate.max_lag_wavelengths) << '\n';
        return os.str();
    }

    MonteCarloConfig make_monte_carlo(const ScenarioConfig &config, const FadingModel &fading)
    {
        MonteCarloConfig mc;
        mc.scenario = config.scenario;
        mc.cir_gen = config.cir_gen;
        if (!config.cir_import_path.empty())
            mc.fixed_cir = import_cir_file(config.cir_import_path);
        mc.regenerate_cir = config.regenerate_cir;
        mc.local_area.rx_array = config.rx_array;
        mc.local_area.tx_array = config.tx_array;
        mc.local_area.autocorr = config.resolved_autocorr();
        mc.local_area.fading = fading;
        mc.local_area.phase = config.corr_phase;
        mc.capacity = config.capacity;
        mc.num_drops = config.num_drops;
        mc.master_seed = config.master_seed;
        mc.num_workers = config.num_workers;
        return mc;
    }

} // namespace mmwchan
