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

#include "mmwchan/estimators.hpp"
#include "mmwchan/text_util.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace mmwchan
{
    void TrackMeasurement::validate() const
    {
        if (amplitudes.rows() < 2)
            throw std::invalid_argument("track needs >= 2 positions");
        if (amplitudes.cols() < 1)
            throw std::invalid_argument("track needs >= 1 delay bin");
        if (!(delta_x > 0.0) || !std::isfinite(delta_x))
            throw std::invalid_argument("track spacing must be > 0 wavelengths");
        if (!amplitudes.allFinite() || (amplitudes.array() < 0.0).any())
            throw std::invalid_argument("track amplitudes must be finite and >= 0");
    }

    std::size_t AutocorrCurve::defined_count() const
    {
        return static_cast<std::size_t>(std::count_if(values.begin(), values.end(), [](const auto &v) { return v.has_value(); }));
    }

    AutocorrCurve spatial_autocorrelation(const TrackMeasurement &track, Eigen::Index delay_bin, int min_overlap)
    {
        track.validate();
        if (delay_bin < 0 || delay_bin >= track.num_bins())
            throw std::out_of_range("delay bin " + std::to_string(delay_bin) + " outside the track");
        if (min_overlap < 1)
            throw std::invalid_argument("min_overlap must be >= 1");

        const Eigen::Index n = track.num_positions();
        const Eigen::Index max_lag = std::max<Eigen::Index>(0, n - min_overlap);
        const auto a = track.amplitudes.col(delay_bin);

        // A window counts as zero variance when all of its values are equal; the computed variance of
        // such a window can be a rounding residue instead of 0.
        auto constant = [&](Eigen::Index first, Eigen::Index m)
        { return (a.segment(first, m).array() == a(first)).all(); };

        AutocorrCurve curve;
        for (Eigen::Index lag = 0; lag <= max_lag; ++lag)
        {
            const Eigen::Index m = n - lag;
            double mx = 0.0, my = 0.0;
            for (Eigen::Index l = 0; l < m; ++l)
            {
                mx += a(l);
                my += a(l + lag);
            }
            mx /= static_cast<double>(m);
            my /= static_cast<double>(m);

            double cov = 0.0, vx = 0.0, vy = 0.0;
            for (Eigen::Index l = 0; l < m; ++l)
            {
                const double dx = a(l) - mx;
                const double dy = a(l + lag) - my;
                cov += dx * dy;
                vx += dx * dx;
                vy += dy * dy;
            }
            cov /= static_cast<double>(m);
            vx /= static_cast<double>(m);
            vy /= static_cast<double>(m);

            curve.lags.push_back(static_cast<double>(lag) * track.delta_x);
            if (vx > 0.0 && vy > 0.0 && !constant(0, m) && !constant(lag, m))
                curve.values.push_back(cov / std::sqrt(vx * vy));
            else
                curve.values.push_back(std::nullopt);
        }
        return curve;
    }

    AutocorrCurve average_curves(std::span<const AutocorrCurve> curves)
    {
        if (curves.empty())
            throw std::invalid_argument("average_curves: no curves");
        std::size_t longest = 0;
        for (std::size_t i = 1; i < curves.size(); ++i)
            if (curves[i].size() > curves[longest].size())
                longest = i;

        AutocorrCurve out;
        out.lags = curves[longest].lags;
        out.values.resize(out.lags.size());
        std::size_t defined = 0;
        for (std::size_t k = 0; k < out.lags.size(); ++k)
        {
            double sum = 0.0;
            std::size_t count = 0;
            for (const auto &c : curves)
            {
                if (k < c.size() && c.values[k])
                {
                    if (std::abs(c.lags[k] - out.lags[k]) > 1e-9 * std::max(1.0, out.lags[k]))
                        throw std::invalid_argument("average_curves: lag grids disagree");
                    sum += *c.values[k];
                    ++count;
                }
            }
            if (count)
            {
                out.values[k] = sum / static_cast<double>(count);
                ++defined;
            }
        }
        if (!defined)
            throw std::invalid_argument("no delay bin has a defined autocorrelation");
        return out;
    }

    AutocorrCurve average_autocorr(const TrackMeasurement &track, int min_overlap)
    {
        track.validate();
        std::vector<AutocorrCurve> curves;
        curves.reserve(static_cast<std::size_t>(track.num_bins()));
        for (Eigen::Index b = 0; b < track.num_bins(); ++b)
            curves.push_back(spatial_autocorrelation(track, b, min_overlap));
        return average_curves(curves);
    }

    // ---------------------------------------------------------------- fit

    namespace
    {
        struct LinearFit
        {
            double a = 0.0;
            double c = 0.0;
            double mse = 0.0;
        };

        // Least squares of y ~ a exp(-b x) - c at fixed b.
        LinearFit fit_at(const std::vector<double> &x, const std::vector<double> &y, double b)
        {
            const double n = static_cast<double>(x.size());
            double su = 0.0, suu = 0.0, sy = 0.0, suy = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i)
            {
                const double u = std::exp(-b * x[i]);
                su += u;
                suu += u * u;
                sy += y[i];
                suy += u * y[i];
            }
            LinearFit f;
            const double det = n * suu - su * su;
            if (det <= 1e-12 * n * suu)
            {
                // exp(-b x) is constant on the samples, only a - c is determined
                f.a = sy / n;
                f.c = 0.0;
            }
            else
            {
                f.a = (n * suy - su * sy) / det;
                f.c = -(sy - f.a * su) / n;
            }
            double sse = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i)
            {
                const double r = f.a * std::exp(-b * x[i]) - f.c - y[i];
                sse += r * r;
            }
            f.mse = sse / n;
            return f;
        }
    } // namespace

    FitResult fit_autocorr_mmse(const AutocorrCurve &curve, const FitOptions &options)
    {
        if (!(options.b_step > 0.0) || options.b_max < options.b_min || options.b_min < 0.0)
            throw std::invalid_argument("fit: invalid B search range");

        std::vector<double> x, y;
        for (std::size_t i = 0; i < curve.size(); ++i)
            if (curve.values[i] && curve.lags[i] <= options.max_lag + 1e-12)
            {
                x.push_back(curve.lags[i]);
                y.push_back(*curve.values[i]);
            }
        if (x.size() < 3)
            throw std::invalid_argument("fit needs >= 3 defined lags within " + std::to_string(options.max_lag) +
                                        " wavelengths, got " + std::to_string(x.size()));

        FitResult out;
        out.num_points = x.size();
        const auto [lo, hi] = std::minmax_element(y.begin(), y.end());
        if (*hi - *lo <= 1e-12)
        {
            const auto f = fit_at(x, y, 0.0);
            out.params = {f.a, 0.0, 0.0};
            out.residual = f.mse;
            out.identifiable = false;
            return out;
        }

        const auto steps = static_cast<long>(std::floor((options.b_max - options.b_min) / options.b_step + 1e-9));
        double best_b = options.b_min;
        LinearFit best = fit_at(x, y, best_b);
        for (long k = 1; k <= steps; ++k)
        {
            const double b = options.b_min + static_cast<double>(k) * options.b_step;
            const auto f = fit_at(x, y, b);
            if (f.mse < best.mse)
            {
                best = f;
                best_b = b;
            }
        }

        // golden-section search on the bracket around the grid optimum
        double l = std::max(options.b_min, best_b - options.b_step);
        double r = std::min(options.b_max, best_b + options.b_step);
        const double g = 0.5 * (std::sqrt(5.0) - 1.0);
        double p = r - g * (r - l), q = l + g * (r - l);
        double fp = fit_at(x, y, p).mse, fq = fit_at(x, y, q).mse;
        for (int it = 0; it < 100 && r - l > 1e-12; ++it)
        {
            if (fp < fq)
            {
                r = q;
                q = p;
                fq = fp;
                p = r - g * (r - l);
                fp = fit_at(x, y, p).mse;
            }
            else
            {
                l = p;
                p = q;
                fp = fq;
                q = l + g * (r - l);
                fq = fit_at(x, y, q).mse;
            }
        }
        const double refined_b = 0.5 * (l + r);
        const auto refined = fit_at(x, y, refined_b);
        if (refined.mse < best.mse)
        {
            best = refined;
            best_b = refined_b;
        }

        out.params = {best.a, best_b, best.c};
        out.residual = best.mse;
        return out;
    }

    // ---------------------------------------------------------------- K factor, CDF

    KFactorEstimate estimate_k_factor(std::span<const double> power_samples)
    {
        if (power_samples.size() < 100)
            throw std::invalid_argument("K-factor estimate needs >= 100 samples, got " + std::to_string(power_samples.size()));
        double mean = 0.0;
        for (double p : power_samples)
        {
            if (!(p > 0.0) || !std::isfinite(p))
                throw std::invalid_argument("K-factor estimate needs finite samples > 0");
            mean += p;
        }
        mean /= static_cast<double>(power_samples.size());

        double m2 = 0.0, m4 = 0.0;
        for (double p : power_samples)
        {
            const double q = p / mean;
            m2 += q;
            m4 += q * q;
        }
        m2 /= static_cast<double>(power_samples.size());
        m4 /= static_cast<double>(power_samples.size());

        KFactorEstimate est;
        const double radicand = 2.0 * m2 * m2 - m4;
        if (!(radicand > 0.0))
        {
            est.status = KFactorStatus::non_rician;
            est.k_linear = 0.0;
            est.k_db = -std::numeric_limits<double>::infinity();
            return est;
        }
        const double root = std::sqrt(radicand);
        const double denom = m2 - root;
        if (denom <= 1e-12 * m2)
        {
            est.status = KFactorStatus::no_fading;
            est.k_linear = std::numeric_limits<double>::infinity();
            est.k_db = std::numeric_limits<double>::infinity();
            return est;
        }
        est.k_linear = root / denom;
        est.k_db = linear_to_db(est.k_linear);
        return est;
    }

    std::vector<CdfPoint> empirical_power_cdf(std::span<const double> power_samples)
    {
        if (power_samples.empty())
            throw std::invalid_argument("power CDF needs >= 1 sample");
        double mean = 0.0;
        for (double p : power_samples)
            mean += p;
        mean /= static_cast<double>(power_samples.size());
        if (!(mean > 0.0))
            throw std::invalid_argument("power CDF needs a positive mean power");
        std::vector<double> db;
        db.reserve(power_samples.size());
        for (double p : power_samples)
            db.push_back(linear_to_db(p / mean));
        return empirical_cdf(std::move(db));
    }

    // ---------------------------------------------------------------- files

    TrackParseError::TrackParseError(std::size_t line, const std::string &what)
        : std::runtime_error("track file line " + std::to_string(line) + ": " + what), line_(line)
    {
    }

    void write_track(std::ostream &os, const TrackMeasurement &track)
    {
        const auto old = os.precision(17);
        os << "delta_x_wavelengths," << track.delta_x << '\n'
           << "delay_bin_ns," << track.delay_bin_ns << '\n'
           << "num_positions," << track.num_positions() << '\n'
           << "num_bins," << track.num_bins() << '\n';
        for (Eigen::Index r = 0; r < track.num_positions(); ++r)
        {
            for (Eigen::Index c = 0; c < track.num_bins(); ++c)
                os << (c ? "," : "") << track.amplitudes(r, c);
            os << '\n';
        }
        os.precision(old);
    }

    TrackMeasurement read_track(std::istream &is)
    {
        static constexpr const char *kKeys[] = {"delta_x_wavelengths", "delay_bin_ns", "num_positions", "num_bins"};
        double header[4] = {};
        int header_seen = 0;
        TrackMeasurement track;
        Eigen::Index row = 0;
        std::string line;
        std::size_t line_no = 0;

        while (std::getline(is, line))
        {
            ++line_no;
            const auto text = trim(line);
            if (text.empty() || text.front() == '#')
                continue;
            const auto cells = split(text, ',');
            if (header_seen < 4)
            {
                if (cells.size() != 2 || trim(cells[0]) != kKeys[header_seen])
                    throw TrackParseError(line_no, std::string("expected header line '") + kKeys[header_seen] + ",<value>'");
                const auto v = parse_double(cells[1]);
                if (!v)
                    throw TrackParseError(line_no, std::string(kKeys[header_seen]) + ": not a number");
                header[header_seen++] = *v;
                if (header_seen == 4)
                {
                    if (header[2] < 2 || header[2] != std::floor(header[2]) || header[3] < 1 || header[3] != std::floor(header[3]))
                        throw TrackParseError(line_no, "num_positions must be an integer >= 2 and num_bins an integer >= 1");
                    track.delta_x = header[0];
                    track.delay_bin_ns = header[1];
                    track.amplitudes.resize(static_cast<Eigen::Index>(header[2]), static_cast<Eigen::Index>(header[3]));
                }
                continue;
            }
            if (row >= track.num_positions())
                throw TrackParseError(line_no, "more than num_positions=" + std::to_string(track.num_positions()) + " rows");
            if (static_cast<Eigen::Index>(cells.size()) != track.num_bins())
                throw TrackParseError(line_no, "position " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                                                   " values, expected num_bins=" + std::to_string(track.num_bins()));
            for (Eigen::Index c = 0; c < track.num_bins(); ++c)
            {
                const auto v = parse_double(cells[static_cast<std::size_t>(c)]);
                if (!v || *v < 0.0 || !std::isfinite(*v))
                    throw TrackParseError(line_no, "position " + std::to_string(row) + " bin " + std::to_string(c) +
                                                       ": amplitude must be a finite number >= 0");
                track.amplitudes(row, c) = *v;
            }
            ++row;
        }
        if (header_seen < 4)
            throw TrackParseError(line_no, std::string("missing header line '") + kKeys[header_seen] + "'");
        if (row != track.num_positions())
            throw TrackParseError(line_no, "expected " + std::to_string(track.num_positions()) + " position rows, got " +
                                               std::to_string(row));
        try
        {
            track.validate();
        }
        catch (const std::invalid_argument &e)
        {
            throw TrackParseError(line_no, e.what());
        }
        return track;
    }

    TrackMeasurement read_track_file(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open track file '" + path + "'");
        return read_track(in);
    }

    void write_curve_csv(std::ostream &os, const AutocorrCurve &curve)
    {
        const auto old = os.precision(17);
        os << "lag_wavelengths,rho\n";
        for (std::size_t i = 0; i < curve.size(); ++i)
        {
            os << curve.lags[i] << ',';
            if (curve.values[i])
                os << *curve.values[i];
            os << '\n';
        }
        os.precision(old);
    }

} // namespace mmwchan
