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

#ifndef MMWCHAN_TOOLS_COMMANDS_HPP
#define MMWCHAN_TOOLS_COMMANDS_HPP

#include "mmwchan/config.hpp"
#include "mmwchan/estimators.hpp"

#include <ostream>
#include <string>

namespace mmwchan::cli
{
    // Per-position received amplitudes of a CIR over a 1 x N receive track. Components falling in the
    // same delay bin add as voltages. Uses the first fading model of the config.
    TrackMeasurement simulate_local_track(const ChannelImpulseResponse &cir, const ScenarioConfig &config);

    // The initial CIR of a run: imported when cir.import_path is set, generated otherwise.
    ChannelImpulseResponse initial_cir(const ScenarioConfig &config);

    void cmd_simulate_cir(const ScenarioConfig &config, std::ostream &log);
    void cmd_simulate_capacity(const ScenarioConfig &config, std::ostream &log);
    void cmd_estimate(const ScenarioConfig &config, const std::string &track_path, std::ostream &log);
    void cmd_dump_defaults(std::ostream &os);

    // Entry point shared by the executable and the tests. Returns the process exit code.
    int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace mmwchan::cli

#endif
