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

#ifndef MMWCHAN_SPATIAL_CORR_HPP
#define MMWCHAN_SPATIAL_CORR_HPP

#include "mmwchan/rng.hpp"
#include "mmwchan/types.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <vector>

namespace mmwchan
{
    using CMatrix = Eigen::MatrixXcd;
    using RMatrix = Eigen::MatrixXd;

    enum class ArraySide
    {
        transmit,
        receive
    };

    // Phase term of the ULA correlation entries.
    enum class CorrPhaseModel
    {
        independent, // uniform [0, 2pi) per pair i < k, conjugate-symmetric below the diagonal
        none         // real correlation, theta = 0 everywhere
    };

    struct CorrelationMatrix
    {
        CMatrix entries;
        ArraySide side = ArraySide::receive;

        Eigen::Index size() const { return entries.rows(); }
    };

    // Local-area MIMO tap H_l of one multipath component.
    struct CorrelatedTap
    {
        CMatrix matrix;          // N_r x N_t
        double delay = 0.0;      // seconds, copied from the parent component
        double mean_power = 0.0; // power_gain of the parent component
    };

    // f(dr) = a exp(-b dr) - c, dr in wavelengths.
    double eval_autocorr(const AutocorrParams &params, double dr);

    // Unrepaired ULA matrix: entry (i,k) = exp(-j theta_ik) f(|i-k| d), theta_ii = 0.
    CMatrix raw_ula_corr_matrix(const AutocorrParams &params, const ArrayGeometry &geometry, std::uint64_t seed,
                                CorrPhaseModel phase = CorrPhaseModel::independent);

    // raw_ula_corr_matrix followed by repair_to_correlation.
    CorrelationMatrix build_ula_corr_matrix(const AutocorrParams &params, const ArrayGeometry &geometry, std::uint64_t seed,
                                            ArraySide side = ArraySide::receive,
                                            CorrPhaseModel phase = CorrPhaseModel::independent);

    // Hermitian, unit diagonal and eigenvalues >= -eig_tol.
    bool is_valid_correlation(const CMatrix &m, double herm_tol = 1e-12, double diag_tol = 1e-12, double eig_tol = 1e-10);

    // Returns the input untouched when it is already a valid correlation matrix. Otherwise takes the
    // Hermitian part, clamps negative eigenvalues at 0 and rescales to unit diagonal. Idempotent.
    CMatrix repair_to_correlation(const CMatrix &m);

    // Hermitian PSD square root through the eigendecomposition. Negative eigenvalues (round-off)
    // are clamped. Throws std::invalid_argument for non-square or non-Hermitian input.
    CMatrix matrix_sqrt_psd(const CMatrix &m);
    CMatrix matrix_sqrt_psd(const CorrelationMatrix &corr);

    // Small-scale fading core H_w, E|entry|^2 = 1.
    CMatrix sample_hw(int n_r, int n_t, const FadingModel &fading, Rng &rng);
    CMatrix sample_hw(int n_r, int n_t, const FadingModel &fading, std::uint64_t seed);

    // matrix = sqrt(power_gain) * r_r_sqrt * h_w * r_t_sqrt. Throws std::invalid_argument on dimension mismatch.
    CorrelatedTap assemble_tap(const CMatrix &r_r_sqrt, const CMatrix &h_w, const CMatrix &r_t_sqrt,
                               const MultipathComponent &component);

    // One tap of the simulation pipeline. Rayleigh and per-entry Rician go through assemble_tap.
    // Coherent Rician adds the common-phase specular term after shaping the scattered part:
    //   sqrt(P) * (sqrt(K/(K+1)) e^{j psi} 1 1^T + sqrt(1/(K+1)) r_r_sqrt G r_t_sqrt)
    CorrelatedTap draw_tap(const CMatrix &r_r_sqrt, const CMatrix &r_t_sqrt, const FadingModel &fading,
                           const MultipathComponent &component, Rng &rng);

    struct LocalAreaConfig
    {
        ArrayGeometry rx_array{20, 0.5};
        ArrayGeometry tx_array{1, 0.5};
        AutocorrParams autocorr{0.9, 1.0, -0.1};
        FadingModel fading;
        CorrPhaseModel phase = CorrPhaseModel::independent;
    };

    struct LocalArea
    {
        CorrelationMatrix r_r;
        CorrelationMatrix r_t;
        std::vector<CorrelatedTap> taps; // one per CIR component, same order
    };

    // Steps of the local-area construction: build R_r and R_t, then one tap per component.
    // R_r, R_t and the fading draws use independent streams derived from seed.
    LocalArea synthesize_local_area(const ChannelImpulseResponse &cir, const LocalAreaConfig &config, std::uint64_t seed);

    // Virtual-array track: amplitudes |h| at num_positions receive positions (rows) for num_bins
    // independent delay bins (columns). corr_sqrt is the square root of the track correlation matrix.
    RMatrix simulate_track_amplitudes(const CMatrix &corr_sqrt, const FadingModel &fading, int num_bins, Rng &rng);
    RMatrix simulate_track_amplitudes(const AutocorrParams &params, const FadingModel &fading, int num_positions,
                                      double spacing_wavelengths, int num_bins, std::uint64_t seed,
                                      CorrPhaseModel phase = CorrPhaseModel::none);

} // namespace mmwchan

#endif
