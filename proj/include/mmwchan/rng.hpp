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

#ifndef MMWCHAN_RNG_HPP
#define MMWCHAN_RNG_HPP

#include <complex>
#include <cstdint>
#include <random>

namespace mmwchan
{
    using Rng = std::mt19937_64;

    // Independent sub-streams of one drop. Values are part of the reproducibility contract.
    enum class Stream : std::uint64_t
    {
        cir = 1,
        rx_correlation = 2,
        tx_correlation = 3,
        fading = 4,
        track = 5,
    };

    // splitmix64 finalizer
    constexpr std::uint64_t mix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    // Seed of item `index` below `parent`. Pure, so results never depend on scheduling.
    constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index)
    {
        return mix64(mix64(parent) ^ mix64(index + 0x632BE59BD9B4E019ULL));
    }

    constexpr std::uint64_t derive_seed(std::uint64_t parent, Stream stream)
    {
        return derive_seed(parent, static_cast<std::uint64_t>(stream) << 56);
    }

    inline double uniform_phase(Rng &rng)
    {
        constexpr double two_pi = 6.283185307179586476925;
        const double p = std::uniform_real_distribution<double>(0.0, two_pi)(rng);
        return p < two_pi ? p : 0.0; // generate_canonical may round up to the open bound
    }

    // Zero-mean circularly-symmetric complex Gaussian with E|z|^2 = 1.
    inline std::complex<double> complex_gaussian(Rng &rng)
    {
        std::normal_distribution<double> n(0.0, 0.70710678118654752440);
        const double re = n(rng);
        const double im = n(rng);
        return {re, im};
    }

} // namespace mmwchan

#endif
