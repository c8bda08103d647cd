# SPDX-License-Identifier: Apache-2.0
#
# mmwchan - statistical mmWave MIMO channel simulator and capacity analyzer
# Copyright (C) 2026 The mmwchan Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
# ------------------------------------------------------------------------

"""Statistical mmWave MIMO channel simulator and capacity analyzer."""

from ._mmwchan import (
    ConfigError,
    average_autocorr,
    default_params,
    empirical_cdf,
    estimate_k_factor,
    eval_autocorr,
    fit_autocorr,
    generate_cir,
    is_valid_correlation,
    matrix_sqrt_psd,
    narrowband_capacity,
    read_cir,
    repair_to_correlation,
    scenarios,
    simulate_capacity,
    simulate_track,
    spatial_autocorrelation,
    ula_correlation,
)

__all__ = [
    "ConfigError",
    "average_autocorr",
    "default_params",
    "empirical_cdf",
    "estimate_k_factor",
    "eval_autocorr",
    "fit_autocorr",
    "generate_cir",
    "is_valid_correlation",
    "matrix_sqrt_psd",
    "narrowband_capacity",
    "read_cir",
    "repair_to_correlation",
    "scenarios",
    "simulate_capacity",
    "simulate_track",
    "spatial_autocorrelation",
    "ula_correlation",
]
