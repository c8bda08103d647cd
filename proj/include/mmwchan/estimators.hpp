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

#ifndef MMWCHAN_ESTIMATORS_HPP
#define MMWCHAN_ESTIMATORS_HPP

#include "mmwchan/capacity.hpp"
#include "mmwchan/types.hpp"

#include <Eigen/Dense>

#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <vector>

namespace mmwchan
{
    // Voltage amplitudes A(T_k, X_l): rows are track positions, columns are delay bins.
    struct TrackMeasurement
    {
        Eigen::MatrixXd amplitudes;
        double delta_x = 0.5;       // wavelengths
        double delay_bin_ns = 2.5;

        Eigen::Index num_positions() const { return amplitudes.rows(); }
        Eigen::Index num_bins() const { return amplitudes.cols(); }
        void validate() const; // >= 2 positions, >= 1 bin, delta_x > 0, amplitudes finite and >= 0
    };

    // values[i] belongs to lags[i] = i * delta_x; nullopt marks an undefined lag.
    struct AutocorrCurve
    {
        std::vector<double> lags;
        std::vector<std::optional<double>> values;

        std::size_t size() const { return lags.size(); }
        std::size_t defined_count() const;
    };

    inline constexpr int kMinOverlap = 8;

    // Normalized covariance between a bin's amplitude sequence and its copy shifted by i positions.
    // Means and variances are taken over the overlapping window of each lag. Lags run up to
    // num_positions - min_overlap (lag 0 only for shorter tracks). A window with zero variance
    // leaves the lag undefined.
    AutocorrCurve spatial_autocorrelation(const TrackMeasurement &track, Eigen::Index delay_bin, int min_overlap = kMinOverlap);

    // Per-lag unweighted mean over the delay bins defined at that lag. Throws if no bin is defined anywhere.
    AutocorrCurve average_autocorr(const TrackMeasurement &track, int min_overlap = kMinOverlap);

    // Per-lag mean of several curves over the curves defined at that lag. Lag grids must agree on the overlap.
    AutocorrCurve average_curves(std::span<const AutocorrCurve> curves);

    struct FitOptions
    {
        double b_min = 0.0;
        double b_max = 10.0;
        double b_step = 0.01;
        double max_lag = 5.0; // wavelengths; lags beyond are ignored
    };

    struct FitResult
    {
        AutocorrParams params;
        double residual = 0.0; // mean squared error over the fitted points
        bool identifiable = true;
        std::size_t num_points = 0;
    };

    // MMSE fit of a exp(-b dr) - c: grid over b with closed-form least squares for (a, c), then a
    // golden-section refinement of b around the best grid point. Needs >= 3 defined lags.
    // A constant curve yields b = 0, c = 0, a = the constant and identifiable = false.
    FitResult fit_autocorr_mmse(const AutocorrCurve &curve, const FitOptions &options = {});

    enum class KFactorStatus
    {
        ok,
        non_rician, // second moment at or above the Rayleigh value, K ~ 0
        no_fading   // no measurable spread, K -> infinity
    };

    struct KFactorEstimate
    {
        double k_db = 0.0; // -inf for non_rician, +inf for no_fading
        double k_linear = 0.0;
        KFactorStatus status = KFactorStatus::ok;
    };

    // Moment estimator on powers normalized by their mean: r = 2 m2^2 - m4, K = sqrt(r) / (m2 - sqrt(r)).
    // Needs >= 100 samples, all > 0.
    KFactorEstimate estimate_k_factor(std::span<const double> power_samples);

    // Sorted (10 log10(p / mean), rank / N) pairs.
    std::vector<CdfPoint> empirical_power_cdf(std::span<const double> power_samples);

    class TrackParseError : public std::runtime_error
    {
    public:
        TrackParseError(std::size_t line, const std::string &what);
        std::size_t line() const { return line_; }

    private:
        std::size_t line_;
    };

    // Track file: four "key,value" header lines (delta_x_wavelengths, delay_bin_ns, num_positions,
    // num_bins) and then num_positions rows of num_bins comma-separated amplitudes.
    void write_track(std::ostream &os, const TrackMeasurement &track);
    TrackMeasurement read_track(std::istream &is);
    TrackMeasurement read_track_file(const std::string &path);

    // lag_wavelengths,rho with an empty rho for undefined lags.
    void write_curve_csv(std::ostream &os, const AutocorrCurve &curve);

} // namespace mmwchan

#endif
