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

#ifndef MMWCHAN_CAPACITY_HPP
#define MMWCHAN_CAPACITY_HPP

#include "mmwchan/cir_gen.hpp"
#include "mmwchan/spatial_corr.hpp"

#include <cstdint>
#include <optional>
#include <ostream>
#include <vector>

namespace mmwchan
{
    struct CapacityConfig
    {
        double bandwidth_hz = 800e6;
        int num_subcarriers = 100;
        double snr_db = 10.0;                // average SNR per receive antenna
        double center_frequency_hz = 28e9;   // metadata; the baseband grid is centered at 0

        double f_min() const { return -0.5 * bandwidth_hz; }
        double f_max() const { return 0.5 * bandwidth_hz; }
        double subcarrier_frequency(int n) const; // f_min + n * BW / N, n = 0 .. N-1
        double snr_linear() const { return db_to_linear(snr_db); }
        void validate() const;
    };

    struct FrequencyResponse
    {
        std::vector<CMatrix> per_subcarrier;
    };

    struct CapacitySample
    {
        double capacity = 0.0; // bits/s/Hz
        std::size_t drop_index = 0;
        std::uint64_t seed = 0;
    };

    // H(f_n) = sum_l H_l exp(-j 2 pi f_n tau_l), tau_l the excess delay relative to the first tap.
    FrequencyResponse frequency_response(const std::vector<CorrelatedTap> &taps, const CapacityConfig &config);

    // log2 det(I + (snr / n_t) H H^H), evaluated in the smaller dimension.
    double narrowband_capacity(const CMatrix &h, double snr_linear, int n_t);

    // Mean of the narrowband capacity over subcarriers.
    double wideband_capacity(const FrequencyResponse &fr, const CapacityConfig &config, int n_t);

    struct MonteCarloConfig
    {
        Scenario scenario;
        CirGenConfig cir_gen;
        std::optional<ChannelImpulseResponse> fixed_cir; // imported CIR, used by every drop when set
        bool regenerate_cir = true;                      // otherwise one generated CIR is shared by all drops
        LocalAreaConfig local_area;
        CapacityConfig capacity;
        std::size_t num_drops = 1;
        std::uint64_t master_seed = 0;
        unsigned num_workers = 0; // 0 picks std::thread::hardware_concurrency()
    };

    // Seed of one drop; every random draw of the drop is derived from it.
    std::uint64_t drop_seed(std::uint64_t master_seed, std::size_t drop_index);

    // Capacity of a single drop. Pure in (config, drop_index).
    CapacitySample run_drop(const MonteCarloConfig &config, std::size_t drop_index);

    // One sample per drop, in drop order. Results do not depend on num_workers.
    std::vector<CapacitySample> run_monte_carlo(const MonteCarloConfig &config);

    struct CdfPoint
    {
        double value = 0.0;
        double cum_prob = 0.0;
    };

    // Sorted (value, rank / N) pairs; tied values collapse onto their highest rank.
    std::vector<CdfPoint> empirical_cdf(std::vector<double> values);
    std::vector<CdfPoint> capacity_cdf(const std::vector<CapacitySample> &samples);

    // Linear interpolation between order statistics, q in [0, 1].
    double quantile(std::vector<double> values, double q);
    std::vector<double> capacities(const std::vector<CapacitySample> &samples);

    void write_samples_csv(std::ostream &os, const std::vector<CapacitySample> &samples);
    void write_cdf_csv(std::ostream &os, const std::vector<CdfPoint> &cdf, const char *value_column = "capacity_bps_hz");

} // namespace mmwchan

#endif
