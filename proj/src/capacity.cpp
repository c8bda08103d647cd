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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace mmwchan
{
    using cd = std::complex<double>;

    double CapacityConfig::subcarrier_frequency(int n) const
    {
        return f_min() + static_cast<double>(n) * bandwidth_hz / static_cast<double>(num_subcarriers);
    }

    void CapacityConfig::validate() const
    {
        if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
            throw std::invalid_argument("capacity bandwidth must be > 0 Hz");
        if (num_subcarriers < 1)
            throw std::invalid_argument("capacity num_subcarriers must be >= 1");
        if (!std::isfinite(snr_db))
            throw std::invalid_argument("capacity snr_db must be finite");
    }

    FrequencyResponse frequency_response(const std::vector<CorrelatedTap> &taps, const CapacityConfig &config)
    {
        config.validate();
        if (taps.empty())
            throw std::invalid_argument("frequency_response: no taps");
        const auto rows = taps.front().matrix.rows();
        const auto cols = taps.front().matrix.cols();
        for (const auto &t : taps)
            if (t.matrix.rows() != rows || t.matrix.cols() != cols)
                throw std::invalid_argument("frequency_response: taps differ in dimension");

        const double t0 = taps.front().delay;
        FrequencyResponse fr;
        fr.per_subcarrier.assign(static_cast<std::size_t>(config.num_subcarriers), CMatrix::Zero(rows, cols));
        for (int n = 0; n < config.num_subcarriers; ++n)
        {
            const double f = config.subcarrier_frequency(n);
            auto &h = fr.per_subcarrier[static_cast<std::size_t>(n)];
            for (const auto &t : taps)
                h += std::polar(1.0, -kTwoPi * f * (t.delay - t0)) * t.matrix;
        }
        return fr;
    }

    double narrowband_capacity(const CMatrix &h, double snr_linear, int n_t)
    {
        if (n_t < 1)
            throw std::invalid_argument("narrowband_capacity: n_t must be >= 1");
        const double scale = snr_linear / static_cast<double>(n_t);
        // det(I + s H H^H) = det(I + s H^H H)
        CMatrix gram = h.rows() <= h.cols() ? CMatrix(h * h.adjoint()) : CMatrix(h.adjoint() * h);
        gram *= scale;
        gram.diagonal().array() += 1.0;
        Eigen::LLT<CMatrix> llt(gram);
        if (llt.info() != Eigen::Success)
            throw std::runtime_error("narrowband_capacity: I + s H H^H is not positive definite");
        double log2det = 0.0;
        const CMatrix &l = llt.matrixLLT();
        for (Eigen::Index i = 0; i < l.rows(); ++i)
            log2det += 2.0 * std::log2(l(i, i).real());
        return std::max(0.0, log2det);
    }

    double wideband_capacity(const FrequencyResponse &fr, const CapacityConfig &config, int n_t)
    {
        if (fr.per_subcarrier.empty())
            throw std::invalid_argument("wideband_capacity: empty frequency response");
        const double snr = config.snr_linear();
        double sum = 0.0;
        for (const auto &h : fr.per_subcarrier)
            sum += narrowband_capacity(h, snr, n_t);
        return sum / static_cast<double>(fr.per_subcarrier.size());
    }

    std::uint64_t drop_seed(std::uint64_t master_seed, std::size_t drop_index)
    {
        return derive_seed(master_seed, static_cast<std::uint64_t>(drop_index));
    }

    namespace
    {
        ChannelImpulseResponse shared_cir(const MonteCarloConfig &config)
        {
            if (config.fixed_cir)
                return *config.fixed_cir;
            auto gen = config.cir_gen;
            gen.rng_seed = derive_seed(config.master_seed, Stream::cir);
            return generate_initial_cir(gen, config.scenario);
        }

        CapacitySample drop_with(const MonteCarloConfig &config, std::size_t index, const ChannelImpulseResponse *cir)
        {
            const std::uint64_t seed = drop_seed(config.master_seed, index);
            ChannelImpulseResponse own;
            if (!cir)
            {
                auto gen = config.cir_gen;
                gen.rng_seed = derive_seed(seed, Stream::cir);
                own = generate_initial_cir(gen, config.scenario);
                cir = &own;
            }
            const auto area = synthesize_local_area(*cir, config.local_area, seed);
            const auto fr = frequency_response(area.taps, config.capacity);
            return {wideband_capacity(fr, config.capacity, config.local_area.tx_array.num_elements), index, seed};
        }

        bool uses_shared_cir(const MonteCarloConfig &config)
        {
            return config.fixed_cir.has_value() || !config.regenerate_cir;
        }
    } // namespace

    CapacitySample run_drop(const MonteCarloConfig &config, std::size_t drop_index)
    {
        if (uses_shared_cir(config))
        {
            const auto cir = shared_cir(config);
            return drop_with(config, drop_index, &cir);
        }
        return drop_with(config, drop_index, nullptr);
    }

    std::vector<CapacitySample> run_monte_carlo(const MonteCarloConfig &config)
    {
        if (config.num_drops < 1)
            throw std::invalid_argument("num_drops must be >= 1");
        config.capacity.validate();
        config.local_area.autocorr.validate();
        config.local_area.rx_array.validate();
        config.local_area.tx_array.validate();
        config.local_area.fading.validate();
        if (!config.fixed_cir)
            config.cir_gen.validate();

        std::optional<ChannelImpulseResponse> cir;
        if (uses_shared_cir(config))
            cir = shared_cir(config);
        const ChannelImpulseResponse *cir_ptr = cir ? &*cir : nullptr;

        std::vector<CapacitySample> out(config.num_drops);
        unsigned workers = config.num_workers ? config.num_workers : std::max(1u, std::thread::hardware_concurrency());
        workers = static_cast<unsigned>(std::min<std::size_t>(workers, config.num_drops));

        std::atomic<std::size_t> next{0};
        std::exception_ptr error;
        std::atomic<bool> failed{false};
        auto work = [&]
        {
            for (std::size_t i = next++; i < config.num_drops && !failed; i = next++)
            {
                try
                {
                    out[i] = drop_with(config, i, cir_ptr);
                }
                catch (...)
                {
                    if (!failed.exchange(true))
                        error = std::current_exception();
                }
            }
        };
        if (workers <= 1)
            work();
        else
        {
            std::vector<std::thread> pool;
            for (unsigned w = 0; w < workers; ++w)
                pool.emplace_back(work);
            for (auto &t : pool)
                t.join();
        }
        if (error)
            std::rethrow_exception(error);
        return out;
    }

    std::vector<CdfPoint> empirical_cdf(std::vector<double> values)
    {
        if (values.empty())
            throw std::invalid_argument("empirical_cdf: no samples");
        std::sort(values.begin(), values.end());
        const double n = static_cast<double>(values.size());
        std::vector<CdfPoint> out;
        for (std::size_t i = 0; i < values.size(); ++i)
        {
            if (i + 1 < values.size() && values[i + 1] == values[i])
                continue;
            out.push_back({values[i], static_cast<double>(i + 1) / n});
        }
        return out;
    }

    std::vector<double> capacities(const std::vector<CapacitySample> &samples)
    {
        std::vector<double> v;
        v.reserve(samples.size());
        for (const auto &s : samples)
            v.push_back(s.capacity);
        return v;
    }

    std::vector<CdfPoint> capacity_cdf(const std::vector<CapacitySample> &samples)
    {
        return empirical_cdf(capacities(samples));
    }

    double quantile(std::vector<double> values, double q)
    {
        if (values.empty())
            throw std::invalid_argument("quantile: no samples");
        if (!(q >= 0.0 && q <= 1.0))
            throw std::invalid_argument("quantile: q must lie in [0, 1]");
        std::sort(values.begin(), values.end());
        const double pos = q * static_cast<double>(values.size() - 1);
        const auto lo = static_cast<std::size_t>(std::floor(pos));
        const auto hi = std::min(lo + 1, values.size() - 1);
        const double frac = pos - static_cast<double>(lo);
        return values[lo] + frac * (values[hi] - values[lo]);
    }

    void write_samples_csv(std::ostream &os, const std::vector<CapacitySample> &samples)
    {
        const auto old = os.precision(17);
        os << "drop_index,seed,capacity_bps_hz\n";
        for (const auto &s : samples)
            os << s.drop_index << ',' << s.seed << ',' << s.capacity << '\n';
        os.precision(old);
    }

    void write_cdf_csv(std::ostream &os, const std::vector<CdfPoint> &cdf, const char *value_column)
    {
        const auto old = os.precision(17);
        os << value_column << ",cum_prob\n";
        for (const auto &p : cdf)
            os << p.value << ',' << p.cum_prob << '\n';
        os.precision(old);
    }

} // namespace mmwchan
