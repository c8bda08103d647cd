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
#include "mmwchan/text_util.hpp"

#include <array>
#include <fstream>
#include <iomanip>

namespace mmwchan
{
    namespace
    {
        constexpr std::array<const char *, 7> kFields = {"delay_ns", "power_linear", "phase_rad", "aod_az_deg",
                                                         "aod_el_deg", "aoa_az_deg", "aoa_el_deg"};
    }

    CirParseError::CirParseError(std::size_t line, const std::string &what)
        : std::runtime_error("CIR file line " + std::to_string(line) + ": " + what), line_(line)
    {
    }

    void export_cir(std::ostream &os, const ChannelImpulseResponse &cir)
    {
        os << "# scenario: " << to_string(cir.scenario) << '\n';
        for (std::size_t i = 0; i < kFields.size(); ++i)
            os << (i ? "," : "") << kFields[i];
        os << '\n';
        const auto old_precision = os.precision(15); // stable under the ns/s and deg/rad conversions of a re-import
        for (const auto &c : cir.components)
        {
            os << s_to_ns(c.delay) << ',' << c.power_gain << ',' << c.phase << ',' << rad_to_deg(c.aod.azimuth) << ','
               << rad_to_deg(c.aod.elevation) << ',' << rad_to_deg(c.aoa.azimuth) << ',' << rad_to_deg(c.aoa.elevation)
               << '\n';
        }
        os.precision(old_precision);
    }

    ChannelImpulseResponse import_cir(std::istream &is)
    {
        Scenario scenario;
        std::vector<MultipathComponent> comps;
        bool have_header = false;
        std::string line;
        std::size_t line_no = 0;

        while (std::getline(is, line))
        {
            ++line_no;
            const auto text = trim(line);
            if (text.empty())
                continue;
            if (text.front() == '#')
            {
                const auto body = trim(text.substr(1));
                if (starts_with_ci(body, "scenario:"))
                {
                    const auto value = trim(body.substr(9));
                    const auto space = value.find(' ');
                    try
                    {
                        if (space == std::string_view::npos)
                            throw std::invalid_argument("expected '<environment> <polarization>'");
                        scenario.environment = parse_environment(trim(value.substr(0, space)));
                        scenario.polarization = parse_polarization(trim(value.substr(space + 1)));
                    }
                    catch (const std::invalid_argument &e)
                    {
                        throw CirParseError(line_no, std::string("bad scenario comment: ") + e.what());
                    }
                }
                continue;
            }

            const auto cells = split(text, ',');
            if (!have_header)
            {
                if (cells.size() != kFields.size())
                    throw CirParseError(line_no, "header must name the 7 fields delay_ns,power_linear,phase_rad,"
                                                 "aod_az_deg,aod_el_deg,aoa_az_deg,aoa_el_deg");
                for (std::size_t i = 0; i < kFields.size(); ++i)
                    if (trim(cells[i]) != kFields[i])
                        throw CirParseError(line_no, "header field " + std::to_string(i + 1) + " is '" +
                                                         std::string(trim(cells[i])) + "', expected '" + kFields[i] + "'");
                have_header = true;
                continue;
            }

            const std::size_t record = comps.size() + 1;
            if (cells.size() != kFields.size())
                throw CirParseError(line_no, "record " + std::to_string(record) + " has " + std::to_string(cells.size()) +
                                                 " fields, expected 7");
            std::array<double, 7> v{};
            for (std::size_t i = 0; i < kFields.size(); ++i)
            {
                auto parsed = parse_double(cells[i]);
                if (!parsed)
                    throw CirParseError(line_no, "record " + std::to_string(record) + " field " + kFields[i] +
                                                     ": not a number '" + std::string(trim(cells[i])) + "'");
                v[i] = *parsed;
            }
            MultipathComponent c;
            c.delay = ns_to_s(v[0]);
            c.power_gain = v[1];
            c.phase = v[2];
            c.aod = {wrap_azimuth(deg_to_rad(v[3])), deg_to_rad(v[4])};
            c.aoa = {wrap_azimuth(deg_to_rad(v[5])), deg_to_rad(v[6])};
            if (!comps.empty() && c.delay < comps.back().delay)
                throw CirParseError(line_no, "record " + std::to_string(record) + " field delay_ns: delay " +
                                                 std::string(trim(cells[0])) +
                                                 " ns is smaller than the previous record's (delays must be non-decreasing)");
            comps.push_back(c);
        }
        if (!have_header)
            throw CirParseError(line_no, "missing header row");
        return ChannelImpulseResponse::create(std::move(comps), scenario);
    }

    ChannelImpulseResponse import_cir_file(const std::string &path)
    {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot open CIR file '" + path + "'");
        return import_cir(in);
    }

} // namespace mmwchan
