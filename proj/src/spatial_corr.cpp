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

#include "mmwchan/spatial_corr.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace mmwchan
{
    namespace
    {
        using cd = std::complex<double>;

        void require_square(const CMatrix &m, const char *what)
        {
            if (m.rows() != m.cols() || m.rows() == 0)
                throw std::invalid_argument(std::string(what) + ": matrix must be square and nonempty");
        }

        double hermitian_defect(const CMatrix &m)
        {
            return (m - m.adjoint()).cwiseAbs().maxCoeff();
        }
    } // namespace

    double eval_autocorr(const AutocorrParams &params, double dr)
    {
        return params.a * std::exp(-params.b * dr) - params.c;
    }

    CMatrix raw_ula_corr_matrix(const AutocorrParams &params, const ArrayGeometry &geometry, std::uint64_t seed,
                                CorrPhaseModel phase)
    {
        geometry.validate();
        const Eigen::Index n = geometry.num_elements;
        Rng rng(seed);
        CMatrix m(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            m(i, i) = eval_autocorr(params, 0.0);
            for (Eigen::Index k = i + 1; k < n; ++k)
            {
                const double rho = eval_autocorr(params, static_cast<double>(k - i) * geometry.spacing_wavelengths);
                const double theta = phase == CorrPhaseModel::independent ? uniform_phase(rng) : 0.0;
                m(i, k) = std::polar(rho, -theta);
                m(k, i) = std::conj(m(i, k));
            }
        }
        return m;
    }

    CorrelationMatrix build_ula_corr_matrix(const AutocorrParams &params, const ArrayGeometry &geometry, std::uint64_t seed,
                                            ArraySide side, CorrPhaseModel phase)
    {
        return {repair_to_correlation(raw_ula_corr_matrix(params, geometry, seed, phase)), side};
    }

    bool is_valid_correlation(const CMatrix &m, double herm_tol, double diag_tol, double eig_tol)
    {
        if (m.rows() != m.cols() || m.rows() == 0 || !m.allFinite())
            return false;
        if (hermitian_defect(m) > herm_tol)
            return false;
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (std::abs(m(i, i) - cd(1.0, 0.0)) > diag_tol)
                return false;
        Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff() >= -eig_tol;
    }

    CMatrix repair_to_correlation(const CMatrix &m)
    {
        require_square(m, "repair_to_correlation");
        if (is_valid_correlation(m))
            return m;

        const CMatrix h = 0.5 * (m + m.adjoint());
        Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
        const Eigen::VectorXd lambda = es.eigenvalues().cwiseMax(0.0);
        const CMatrix &v = es.eigenvectors();
        CMatrix p = v * lambda.cast<cd>().asDiagonal() * v.adjoint();

        const Eigen::Index n = p.rows();
        Eigen::VectorXd scale(n);
        for (Eigen::Index i = 0; i < n; ++i)
        {
            const double d = p(i, i).real();
            scale(i) = d > 1e-300 ? 1.0 / std::sqrt(d) : 0.0; // a fully clamped direction becomes uncorrelated
        }
        CMatrix out = scale.cast<cd>().asDiagonal() * p * scale.cast<cd>().asDiagonal();
        out = 0.5 * (out + out.adjoint()).eval();
        for (Eigen::Index i = 0; i < n; ++i)
            out(i, i) = 1.0;
        return out;
    }

    CMatrix matrix_sqrt_psd(const CMatrix &m)
    {
        require_square(m, "matrix_sqrt_psd");
        const double tol = 1e-10 * std::max(1.0, m.cwiseAbs().maxCoeff());
        if (hermitian_defect(m) > tol)
            throw std::invalid_argument("matrix_sqrt_psd: input is not Hermitian");
        Eigen::SelfAdjointEigenSolver<CMatrix> es(0.5 * (m + m.adjoint()));
        const Eigen::VectorXd root = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
        const CMatrix &v = es.eigenvectors();
        CMatrix s = v * root.cast<cd>().asDiagonal() * v.adjoint();
        return 0.5 * (s + s.adjoint());
    }

    CMatrix matrix_sqrt_psd(const CorrelationMatrix &corr)
    {
        return matrix_sqrt_psd(corr.entries);
    }

    CMatrix sample_hw(int n_r, int n_t, const FadingModel &fading, Rng &rng)
    {
        if (n_r < 1 || n_t < 1)
            throw std::invalid_argument("sample_hw: dimensions must be >= 1");
        fading.validate();
        CMatrix h(n_r, n_t);
        if (fading.kind == FadingKind::rayleigh)
        {
            for (Eigen::Index k = 0; k < h.cols(); ++k)
                for (Eigen::Index i = 0; i < h.rows(); ++i)
                    h(i, k) = complex_gaussian(rng);
            return h;
        }

        const double k = fading.k_linear();
        const double los = std::sqrt(k / (k + 1.0));
        const double nlos = std::sqrt(1.0 / (k + 1.0));
        const bool shared = fading.los == RicianLos::coherent;
        const double common = shared ? uniform_phase(rng) : 0.0;
        for (Eigen::Index c = 0; c < h.cols(); ++c)
            for (Eigen::Index i = 0; i < h.rows(); ++i)
            {
                const double psi = shared ? common : uniform_phase(rng);
                h(i, c) = std::polar(los, psi) + nlos * complex_gaussian(rng);
            }
        return h;
    }

    CMatrix sample_hw(int n_r, int n_t, const FadingModel &fading, std::uint64_t seed)
    {
        Rng rng(seed);
        return sample_hw(n_r, n_t, fading, rng);
    }

    CorrelatedTap assemble_tap(const CMatrix &r_r_sqrt, const CMatrix &h_w, const CMatrix &r_t_sqrt,
                               const MultipathComponent &component)
    {
        if (r_r_sqrt.rows() != r_r_sqrt.cols() || r_t_sqrt.rows() != r_t_sqrt.cols() ||
            r_r_sqrt.cols() != h_w.rows() || h_w.cols() != r_t_sqrt.rows())
            throw std::invalid_argument("assemble_tap: dimension mismatch (R_r^1/2 " + std::to_string(r_r_sqrt.rows()) +
                                        "x" + std::to_string(r_r_sqrt.cols()) + ", H_w " + std::to_string(h_w.rows()) +
                                        "x" + std::to_string(h_w.cols()) + ", R_t^1/2 " + std::to_string(r_t_sqrt.rows()) +
                                        "x" + std::to_string(r_t_sqrt.cols()) + ")");
        CorrelatedTap tap;
        tap.matrix = std::sqrt(component.power_gain) * (r_r_sqrt * h_w * r_t_sqrt);
        tap.delay = component.delay;
        tap.mean_power = component.power_gain;
        return tap;
    }

    CorrelatedTap draw_tap(const CMatrix &r_r_sqrt, const CMatrix &r_t_sqrt, const FadingModel &fading,
                           const MultipathComponent &component, Rng &rng)
    {
        const auto n_r = static_cast<int>(r_r_sqrt.rows());
        const auto n_t = static_cast<int>(r_t_sqrt.rows());
        if (fading.kind == FadingKind::rayleigh || fading.los == RicianLos::per_entry)
            return assemble_tap(r_r_sqrt, sample_hw(n_r, n_t, fading, rng), r_t_sqrt, component);

        fading.validate();
        const double k = fading.k_linear();
        const cd specular = std::polar(std::sqrt(k / (k + 1.0)), uniform_phase(rng));
        const CMatrix g = sample_hw(n_r, n_t, FadingModel::rayleigh(), rng);
        CorrelatedTap tap = assemble_tap(r_r_sqrt, g, r_t_sqrt, component);
        tap.matrix *= std::sqrt(1.0 / (k + 1.0));
        tap.matrix.array() += std::sqrt(component.power_gain) * specular;
        return tap;
    }

    LocalArea synthesize_local_area(const ChannelImpulseResponse &cir, const LocalAreaConfig &config, std::uint64_t seed)
    {
        config.autocorr.validate();
        LocalArea out;
        out.r_r = build_ula_corr_matrix(config.autocorr, config.rx_array, derive_seed(seed, Stream::rx_correlation),
                                        ArraySide::receive, config.phase);
        out.r_t = build_ula_corr_matrix(config.autocorr, config.tx_array, derive_seed(seed, Stream::tx_correlation),
                                        ArraySide::transmit, config.phase);
        const CMatrix s_r = matrix_sqrt_psd(out.r_r);
        const CMatrix s_t = matrix_sqrt_psd(out.r_t);
        Rng rng(derive_seed(seed, Stream::fading));
        out.taps.reserve(cir.components.size());
        for (const auto &c : cir.components)
            out.taps.push_back(draw_tap(s_r, s_t, config.fading, c, rng));
        return out;
    }

    RMatrix simulate_track_amplitudes(const CMatrix &corr_sqrt, const FadingModel &fading, int num_bins, Rng &rng)
    {
        if (num_bins < 1)
            throw std::invalid_argument("simulate_track_amplitudes: num_bins must be >= 1");
        const CMatrix one = CMatrix::Identity(1, 1);
        const MultipathComponent unit;
        RMatrix amp(corr_sqrt.rows(), num_bins);
        for (int b = 0; b < num_bins; ++b)
            amp.col(b) = draw_tap(corr_sqrt, one, fading, unit, rng).matrix.col(0).cwiseAbs();
        return amp;
    }

    RMatrix simulate_track_amplitudes(const AutocorrParams &params, const FadingModel &fading, int num_positions,
                                      double spacing_wavelengths, int num_bins, std::uint64_t seed, CorrPhaseModel phase)
    {
        params.validate();
        const ArrayGeometry track{num_positions, spacing_wavelengths};
        const auto corr = build_ula_corr_matrix(params, track, derive_seed(seed, Stream::rx_correlation),
                                                ArraySide::receive, phase);
        Rng rng(derive_seed(seed, Stream::track));
        return simulate_track_amplitudes(matrix_sqrt_psd(corr), fading, num_bins, rng);
    }

} // namespace mmwchan
