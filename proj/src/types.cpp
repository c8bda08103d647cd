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

#include "mmwchan/types.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <sstream>

namespace mmwchan
{
    double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

    std::string to_string(Environment env)
    {
        switch (env)
        {
        case Environment::los:
            return "LOS";
        case Environment::nlos:
            return "NLOS";
        case Environment::los_to_nlos:
            return "LOS-to-NLOS";
        }
        return "?";
    }

    std::string to_string(Polarization pol)
    {
        return pol == Polarization::vv ? "V-V" : "V-H";
    }

    std::string to_string(const Scenario &sc)
    {
        return to_string(sc.environment) + " " + to_string(sc.polarization);
    }

    namespace
    {
        std::string normalized(std::string_view text)
        {
            std::string out;
            for (char ch : text)
                if (ch != '-' && ch != '_' && ch != ' ')
                    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
            return out;
        }
    } // namespace

    Environment parse_environment(std::string_view text)
    {
        const auto key = normalized(text);
        if (key == "los")
            return Environment::los;
        if (key == "nlos")
            return Environment::nlos;
        if (key == "lostonlos")
            return Environment::los_to_nlos;
        throw std::invalid_argument("unknown environment '" + std::string(text) + "' (expected LOS, NLOS or LOS-to-NLOS)");
    }

    Polarization parse_polarization(std::string_view text)
    {
        const auto key = normalized(text);
        if (key == "vv")
            return Polarization::vv;
        if (key == "vh")
            return Polarization::vh;
        throw std::invalid_argument("unknown polarization '" + std::string(text) + "' (expected V-V or V-H)");
    }

    std::span<const Scenario> all_scenarios()
    {
        static constexpr std::array<Scenario, 6> kAll{{
            {Environment::los, Polarization::vv},
            {Environment::los, Polarization::vh},
            {Environment::nlos, Polarization::vv},
            {Environment::nlos, Polarization::vh},
            {Environment::los_to_nlos, Polarization::vv},
            {Environment::los_to_nlos, Polarization::vh},
        }};
        return kAll;
    }

    double wrap_azimuth(double az)
    {
        double w = std::fmod(az, kTwoPi);
        if (w < 0.0)
            w += kTwoPi;
        if (w >= kTwoPi) // fmod of a tiny negative can land exactly on 2pi
            w = 0.0;
        return w;
    }

    // ---------------------------------------------------------------- CIR

    namespace
    {
        std::string describe(const std::vector<CirViolation> &violations)
        {
            std::ostringstream os;
            os << "invalid channel impulse response:";
            for (const auto &v : violations)
            {
                os << "\n  ";
                if (v.index != CirViolation::npos)
                    os << "component " << v.index << ": ";
                os << v.message;
            }
            return os.str();
        }

        double sum_power(const std::vector<MultipathComponent> &comps)
        {
            double total = 0.0;
            for (const auto &c : comps)
                total += c.power_gain;
            return total;
        }

        bool angle_ok(const Angles &a)
        {
            return std::isfinite(a.azimuth) && std::isfinite(a.elevation) && a.azimuth >= 0.0 && a.azimuth < kTwoPi &&
                   a.elevation >= -kPi / 2 && a.elevation <= kPi / 2;
        }
    } // namespace

    CirError::CirError(std::vector<CirViolation> violations)
        : std::invalid_argument(describe(violations)), violations_(std::move(violations))
    {
    }

    ChannelImpulseResponse ChannelImpulseResponse::create(std::vector<MultipathComponent> components, Scenario scenario)
    {
        ChannelImpulseResponse cir;
        cir.total_power = sum_power(components);
        cir.components = std::move(components);
        cir.scenario = scenario;
        if (auto report = validate_cir(cir); !report.empty())
            throw CirError(std::move(report));
        return cir;
    }

    std::vector<CirViolation> validate_cir(const ChannelImpulseResponse &cir)
    {
        std::vector<CirViolation> out;
        if (cir.components.empty())
        {
            out.push_back({CirViolation::npos, "K >= 1 (no components)"});
            return out;
        }

        for (std::size_t i = 0; i < cir.components.size(); ++i)
        {
            const auto &c = cir.components[i];
            if (!(c.power_gain > 0.0) || !std::isfinite(c.power_gain))
                out.push_back({i, "power_gain > 0"});
            if (!(c.delay >= 0.0) || !std::isfinite(c.delay))
                out.push_back({i, "delay >= 0"});
            if (!(c.phase >= 0.0 && c.phase < kTwoPi))
                out.push_back({i, "phase in [0, 2pi)"});
            if (!angle_ok(c.aod))
                out.push_back({i, "AOD azimuth in [0, 2pi), elevation in [-pi/2, pi/2]"});
            if (!angle_ok(c.aoa))
                out.push_back({i, "AOA azimuth in [0, 2pi), elevation in [-pi/2, pi/2]"});
            if (i > 0 && c.delay < cir.components[i - 1].delay)
                out.push_back({i, "non-decreasing delays"});
        }

        const double total = sum_power(cir.components);
        if (!(std::abs(cir.total_power - total) <= 1e-12 * std::max(1.0, std::abs(total))))
            out.push_back({CirViolation::npos, "total_power equals sum of power gains"});
        return out;
    }

    // ---------------------------------------------------------------- arrays, fading, autocorr

    void ArrayGeometry::validate() const
    {
        if (num_elements < 1)
            throw std::invalid_argument("array num_elements must be >= 1");
        if (!(spacing_wavelengths > 0.0) || !std::isfinite(spacing_wavelengths))
            throw std::invalid_argument("array spacing must be > 0 wavelengths");
    }

    double FadingModel::k_linear() const
    {
        if (kind == FadingKind::rayleigh)
            return 0.0;
        if (std::isinf(k_factor_db) && k_factor_db > 0.0)
            return 1e12;
        return std::clamp(db_to_linear(k_factor_db), 1e-6, 1e12);
    }

    void FadingModel::validate() const
    {
        if (kind == FadingKind::rician && std::isnan(k_factor_db))
            throw std::invalid_argument("Rician K factor must be a number");
        if (kind == FadingKind::rician && std::isinf(k_factor_db) && k_factor_db < 0.0)
            throw std::invalid_argument("Rician K factor must be > 0 linear");
    }

    std::string FadingModel::label() const
    {
        if (kind == FadingKind::rayleigh)
            return "rayleigh";
        std::ostringstream os;
        os << "rician_" << k_factor_db << "db";
        return os.str();
    }

    void AutocorrParams::validate() const
    {
        if (!(a > 0.0) || !std::isfinite(a))
            throw std::invalid_argument("autocorrelation A must be > 0");
        if (!(b >= 0.0) || std::isnan(b))
            throw std::invalid_argument("autocorrelation B must be >= 0");
        const double zero_lag = a - c;
        if (!(zero_lag > 0.0 && zero_lag <= 1.0 + 1e-12))
            throw std::invalid_argument("autocorrelation A - C must lie in (0, 1]");
    }

    DefaultParams lookup_default_params(const Scenario &scenario)
    {
        const bool vv = scenario.polarization == Polarization::vv;
        switch (scenario.environment)
        {
        case Environment::los:
            return vv ? DefaultParams{AutocorrParams{0.99, 1.95, 0.0}, {9.0, 15.0}}
                      : DefaultParams{AutocorrParams{1.0, 0.9, 0.05}, {3.0, 7.0}};
        case Environment::nlos:
            return vv ? DefaultParams{AutocorrParams{0.9, 1.0, -0.1}, {5.0, 8.0}}
                      : DefaultParams{AutocorrParams{1.0, 2.6, 0.0}, {3.0, 7.0}};
        case Environment::los_to_nlos:
            return vv ? DefaultParams{std::nullopt, {4.0, 7.0}} : DefaultParams{std::nullopt, {6.0, 10.0}};
        }
        throw std::invalid_argument("unknown scenario");
    }

} // namespace mmwchan
