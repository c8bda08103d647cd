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

#ifndef MMWCHAN_CIR_GEN_HPP
#define MMWCHAN_CIR_GEN_HPP

#include "mmwchan/types.hpp"

#include <cstdint>
#include <istream>
#include <ostream>
#include <vector>

namespace mmwchan
{
    struct IntRange
    {
        int lo = 1;
        int hi = 1;
        bool operator==(const IntRange &) const = default;
    };

    // Parameters of the time-cluster / spatial-lobe construction of the initial CIR.
    //
    // Only the 25 ns inter-cluster void comes from measurement. The remaining defaults are
    // stand-ins of the right order of magnitude for 28 GHz outdoor channels; substitute
    // externally generated CIRs through import_cir() when exact statistics matter.
    struct CirGenConfig
    {
        IntRange num_clusters{1, 6};
        IntRange paths_per_cluster{1, 30};
        double intercluster_void_ns = 25.0;
        double cluster_decay_ns = 25.9;       // cluster power ~ exp(-excess / cluster_decay)
        double intracluster_decay_ns = 16.9;  // subpath power ~ exp(-intra / intracluster_decay)
        double cluster_excess_mean_ns = 30.0; // mean of the exponential gap added to the void
        double subpath_spacing_ns = 2.5;      // mean subpath inter-arrival inside a cluster
        double max_excess_delay_ns = 800.0;   // delay budget of the whole CIR
        IntRange num_lobes{1, 4};             // per side (departure and arrival)
        double lobe_angular_spread_deg = 10.0;
        std::uint64_t rng_seed = 0;

        void validate() const; // throws std::invalid_argument
    };

    enum class LobeSide
    {
        departure,
        arrival
    };

    struct SpatialLobe
    {
        Angles center;
        LobeSide side = LobeSide::arrival;
    };

    struct TimeCluster
    {
        double excess_delay = 0.0; // seconds, delay of the first subpath
        std::vector<MultipathComponent> subpaths;

        double end_delay() const { return subpaths.empty() ? excess_delay : subpaths.back().delay; }
    };

    struct ClusteredCir
    {
        ChannelImpulseResponse cir;
        std::vector<TimeCluster> clusters; // generator-declared boundaries, same components as cir
        std::vector<SpatialLobe> departure_lobes;
        std::vector<SpatialLobe> arrival_lobes;
    };

    // Initial, spatially averaged omnidirectional CIR. Deterministic in (config, scenario).
    // Total power is normalized to 1; the first component arrives at delay 0.
    ClusteredCir generate_clustered_cir(const CirGenConfig &config, const Scenario &scenario);
    ChannelImpulseResponse generate_initial_cir(const CirGenConfig &config, const Scenario &scenario);

    struct VoidPartition
    {
        bool voids_respected = true;
        std::size_t num_clusters = 0;
    };

    // Split components into maximal groups whose consecutive delay gaps are < void_ns.
    VoidPartition check_void_intervals(const ChannelImpulseResponse &cir, double void_ns);

    // True iff every declared cluster starts at least void_ns after the previous one ends.
    bool check_cluster_voids(const std::vector<TimeCluster> &clusters, double void_ns);

    // CIR file: header row, one record per component.
    //   delay_ns,power_linear,phase_rad,aod_az_deg,aod_el_deg,aoa_az_deg,aoa_el_deg
    // Leading '#' lines are comments; "# scenario: NLOS V-V" sets the scenario.
    class CirParseError : public std::runtime_error
    {
    public:
        CirParseError(std::size_t line, const std::string &what);
        std::size_t line() const { return line_; }

    private:
        std::size_t line_;
    };

    void export_cir(std::ostream &os, const ChannelImpulseResponse &cir);
    ChannelImpulseResponse import_cir(std::istream &is);
    ChannelImpulseResponse import_cir_file(const std::string &path);

} // namespace mmwchan

#endif
