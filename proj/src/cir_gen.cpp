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

#include "mmwchan/cir_gen.hpp"
#include "mmwchan/rng.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace mmwchan
{
    namespace
    {
        void check_range(const IntRange &r, const char *name)
        {
            if (r.lo < 1 || r.hi < r.lo)
                throw std::invalid_argument(std::string("CIR generator: ") + name + " must be a nonempty range with positive bounds");
        }

        void check_positive(double v, const char *name)
        {
            if (!(v > 0.0) || !std::isfinite(v))
                throw std::invalid_argument(std::string("CIR generator: ") + name + " must be > 0");
        }

        void check_non_negative(double v, const char *name)
        {
            if (!(v >= 0.0) || !std::isfinite(v))
                throw std::invalid_argument(std::string("CIR generator: ") + name + " must be >= 0");
        }

        int draw(Rng &rng, const IntRange &r)
        {
            return std::uniform_int_distribution<int>(r.lo, r.hi)(rng);
        }

        // Exponential with the given mean; mean 0 gives 0.
        double draw_exponential(Rng &rng, double mean)
        {
            if (mean <= 0.0)
                return 0.0;
            return std::exponential_distribution<double>(1.0 / mean)(rng);
        }

        Angles draw_lobe_center(Rng &rng, double spread_rad)
        {
            std::normal_distribution<double> el(0.0, spread_rad);
            return {uniform_phase(rng), std::clamp(el(rng), -kPi / 2, kPi / 2)};
        }

        Angles offset_angle(Rng &rng, const Angles &center, double spread_rad)
        {
            std::normal_distribution<double> n(0.0, spread_rad);
            const double az = wrap_azimuth(center.azimuth + n(rng));
            const double el = std::clamp(center.elevation + n(rng), -kPi / 2, kPi / 2);
            return {az, el};
        }
    } // namespace

    void CirGenConfig::validate() const
    {
        check_range(num_clusters, "num_clusters");
        check_range(paths_per_cluster, "paths_per_cluster");
        check_range(num_lobes, "num_lobes");
        check_non_negative(intercluster_void_ns, "intercluster_void_ns");
        check_positive(cluster_decay_ns, "cluster_decay_ns");
        check_positive(intracluster_decay_ns, "intracluster_decay_ns");
        check_non_negative(cluster_excess_mean_ns, "cluster_excess_mean_ns");
        check_non_negative(subpath_spacing_ns, "subpath_spacing_ns");
        check_non_negative(lobe_angular_spread_deg, "lobe_angular_spread_deg");
        check_positive(max_excess_delay_ns, "max_excess_delay_ns");
        const double needed = (num_clusters.hi - 1) * intercluster_void_ns;
        if (needed > max_excess_delay_ns)
            throw std::invalid_argument("CIR generator: delay budget of " + std::to_string(max_excess_delay_ns) +
                                        " ns cannot host " + std::to_string(num_clusters.hi) + " clusters separated by " +
                                        std::to_string(intercluster_void_ns) + " ns voids");
    }

    ClusteredCir generate_clustered_cir(const CirGenConfig &config, const Scenario &scenario)
    {
        config.validate();
        Rng rng(config.rng_seed);
        const double spread = deg_to_rad(config.lobe_angular_spread_deg);
        const double budget = config.max_excess_delay_ns;
        const double void_ns = config.intercluster_void_ns;

        const int n_clusters = draw(rng, config.num_clusters);
        ClusteredCir out;
        const int n_dep = draw(rng, config.num_lobes);
        const int n_arr = draw(rng, config.num_lobes);
        for (int i = 0; i < n_dep; ++i)
            out.departure_lobes.push_back({draw_lobe_center(rng, spread), LobeSide::departure});
        for (int i = 0; i < n_arr; ++i)
            out.arrival_lobes.push_back({draw_lobe_center(rng, spread), LobeSide::arrival});

        // Delays are built in ns and converted once at the end.
        struct Raw
        {
            double start_ns;
            std::vector<double> intra_ns;
            std::vector<double> power;
            std::vector<MultipathComponent> comps;
        };
        std::vector<Raw> raw(static_cast<std::size_t>(n_clusters));

        double prev_end_ns = 0.0;
        for (int j = 0; j < n_clusters; ++j)
        {
            auto &cl = raw[static_cast<std::size_t>(j)];
            const double reserved = (n_clusters - 1 - j) * void_ns; // room the later clusters need
            if (j == 0)
                cl.start_ns = 0.0;
            else
            {
                const double earliest = prev_end_ns + void_ns;
                const double slack = std::max(0.0, budget - reserved - earliest);
                cl.start_ns = earliest + std::min(draw_exponential(rng, config.cluster_excess_mean_ns), slack);
            }
            const double intra_room = std::max(0.0, budget - reserved - cl.start_ns);

            const int n_paths = draw(rng, config.paths_per_cluster);
            const auto &dep = out.departure_lobes[std::uniform_int_distribution<std::size_t>(0, out.departure_lobes.size() - 1)(rng)];
            const auto &arr = out.arrival_lobes[std::uniform_int_distribution<std::size_t>(0, out.arrival_lobes.size() - 1)(rng)];
            const double cluster_power = std::exp(-cl.start_ns / config.cluster_decay_ns);

            double intra = 0.0;
            for (int k = 0; k < n_paths; ++k)
            {
                if (k > 0)
                    intra = std::min(intra + draw_exponential(rng, config.subpath_spacing_ns), intra_room);
                MultipathComponent mpc;
                mpc.power_gain = cluster_power * std::exp(-intra / config.intracluster_decay_ns);
                mpc.phase = uniform_phase(rng);
                mpc.aod = offset_angle(rng, dep.center, spread);
                mpc.aoa = offset_angle(rng, arr.center, spread);
                cl.intra_ns.push_back(intra);
                cl.comps.push_back(mpc);
            }
            prev_end_ns = cl.start_ns + intra;
        }

        double total = 0.0;
        for (const auto &cl : raw)
            for (const auto &c : cl.comps)
                total += c.power_gain;

        std::vector<MultipathComponent> all;
        for (auto &cl : raw)
        {
            TimeCluster tc;
            tc.excess_delay = ns_to_s(cl.start_ns);
            for (std::size_t k = 0; k < cl.comps.size(); ++k)
            {
                auto c = cl.comps[k];
                c.power_gain /= total;
                c.delay = ns_to_s(cl.start_ns + cl.intra_ns[k]);
                tc.subpaths.push_back(c);
                all.push_back(c);
            }
            out.clusters.push_back(std::move(tc));
        }
        out.cir = ChannelImpulseResponse::create(std::move(all), scenario);
        return out;
    }

    ChannelImpulseResponse generate_initial_cir(const CirGenConfig &config, const Scenario &scenario)
    {
        return generate_clustered_cir(config, scenario).cir;
    }

    VoidPartition check_void_intervals(const ChannelImpulseResponse &cir, double void_ns)
    {
        VoidPartition out;
        if (cir.components.empty())
            return out;
        out.num_clusters = 1;
        for (std::size_t i = 1; i < cir.components.size(); ++i)
        {
            const double gap_ns = s_to_ns(cir.components[i].delay - cir.components[i - 1].delay);
            if (gap_ns >= void_ns)
                ++out.num_clusters; // group boundary; the gap meets the void by construction
            else if (gap_ns < 0.0)
                out.voids_respected = false;
        }
        return out;
    }

    bool check_cluster_voids(const std::vector<TimeCluster> &clusters, double void_ns)
    {
        // Delays pass through an ns -> s conversion, allow for that rounding only.
        constexpr double tol_ns = 1e-6;
        for (std::size_t j = 1; j < clusters.size(); ++j)
        {
            const double gap_ns = s_to_ns(clusters[j].excess_delay - clusters[j - 1].end_delay());
            if (gap_ns < void_ns - tol_ns)
                return false;
        }
        return true;
    }

} // namespace mmwchan
