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

#ifndef MMWCHAN_TYPES_HPP
#define MMWCHAN_TYPES_HPP

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mmwchan
{
    inline constexpr double kPi = 3.14159265358979323846;
    inline constexpr double kTwoPi = 2.0 * kPi;

    // Unit helpers. Delays are seconds internally, the file formats and CLI use nanoseconds.
    constexpr double ns_to_s(double ns) { return ns * 1e-9; }
    constexpr double s_to_ns(double s) { return s * 1e9; }
    constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
    constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }
    double db_to_linear(double db);
    double linear_to_db(double linear);

    enum class Environment
    {
        los,
        nlos,
        los_to_nlos
    };

    enum class Polarization
    {
        vv, // co-polarized, vertical TX to vertical RX
        vh  // cross-polarized
    };

    struct Scenario
    {
        Environment environment = Environment::nlos;
        Polarization polarization = Polarization::vv;

        bool operator==(const Scenario &) const = default;
    };

    std::string to_string(Environment env);     // "LOS", "NLOS", "LOS-to-NLOS"
    std::string to_string(Polarization pol);    // "V-V", "V-H"
    std::string to_string(const Scenario &sc);  // "NLOS V-V"
    Environment parse_environment(std::string_view text);   // case-insensitive, throws std::invalid_argument
    Polarization parse_polarization(std::string_view text); // accepts "V-V", "VV", "vv", ...

    // All six (environment, polarization) combinations, LOS first.
    std::span<const Scenario> all_scenarios();

    // Azimuth in [0, 2pi), elevation in [-pi/2, pi/2], both radians.
    struct Angles
    {
        double azimuth = 0.0;
        double elevation = 0.0;

        bool operator==(const Angles &) const = default;
    };

    // Wrap an azimuth into [0, 2pi).
    double wrap_azimuth(double az);

    // One resolvable path of the omnidirectional impulse response.
    struct MultipathComponent
    {
        double power_gain = 1.0; // |a_k|^2, linear, relative
        double phase = 0.0;      // radians in [0, 2pi)
        double delay = 0.0;      // seconds, absolute propagation delay
        Angles aod;              // departure
        Angles aoa;              // arrival

        bool operator==(const MultipathComponent &) const = default;
    };

    // Ordered set of multipath components (ascending delay) plus scenario metadata.
    // Build through create(), which validates and caches the total power. The members stay
    // public so that validate_cir() can inspect hand-assembled (possibly invalid) instances.
    struct ChannelImpulseResponse
    {
        std::vector<MultipathComponent> components;
        Scenario scenario;
        double total_power = 0.0;

        // Throws CirError listing every violated invariant.
        static ChannelImpulseResponse create(std::vector<MultipathComponent> components, Scenario scenario);

        std::size_t size() const { return components.size(); }
    };

    struct CirViolation
    {
        std::size_t index;   // offending component, or npos for whole-CIR violations
        std::string message; // names the invariant, e.g. "K >= 1", "non-decreasing delays"
        static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    };

    class CirError : public std::invalid_argument
    {
    public:
        explicit CirError(std::vector<CirViolation> violations);
        const std::vector<CirViolation> &violations() const { return violations_; }

    private:
        std::vector<CirViolation> violations_;
    };

    // Report of violated invariants; empty means valid. Never throws, never mutates.
    std::vector<CirViolation> validate_cir(const ChannelImpulseResponse &cir);

    // Uniform linear array. Spacing is in carrier wavelengths.
    struct ArrayGeometry
    {
        int num_elements = 1;
        double spacing_wavelengths = 0.5;

        void validate() const; // throws std::invalid_argument
    };

    enum class FadingKind
    {
        rayleigh,
        rician
    };

    // Structure of the Rician line-of-sight term inside H_w.
    enum class RicianLos
    {
        coherent,  // one uniform phase per tap, shared by every entry; added after correlation shaping
        per_entry  // independent uniform phase per entry, shaped with the scattered part
    };

    struct FadingModel
    {
        FadingKind kind = FadingKind::rayleigh;
        double k_factor_db = 0.0; // only meaningful for Rician
        RicianLos los = RicianLos::coherent;

        static FadingModel rayleigh() { return {}; }
        static FadingModel rician(double k_db, RicianLos los = RicianLos::coherent) { return {FadingKind::rician, k_db, los}; }

        // Linear K, clamped to [1e-6, 1e12]; 0 for Rayleigh.
        double k_linear() const;
        void validate() const;
        std::string label() const; // "rayleigh", "rician_5db", "rician_15db", "rician_7.5db"
    };

    // Exponential spatial autocorrelation model f(dr) = a * exp(-b * dr) - c, dr in wavelengths.
    struct AutocorrParams
    {
        double a = 1.0;
        double b = 0.0; // inverse wavelengths
        double c = 0.0;

        void validate() const; // a > 0, b >= 0, a - c in (0, 1]
        bool operator==(const AutocorrParams &) const = default;
    };

    struct KFactorRange
    {
        double lo_db;
        double hi_db;
    };

    // Measured model parameters for one scenario. autocorr is absent for LOS-to-NLOS,
    // which has K-factor ranges but no fitted exponential model.
    struct DefaultParams
    {
        std::optional<AutocorrParams> autocorr;
        KFactorRange k_range;
    };

    DefaultParams lookup_default_params(const Scenario &scenario);

} // namespace mmwchan

#endif
