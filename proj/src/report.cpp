// SPDX-License-Identifier: Apache-2.0
//
// mimo-ee: energy-efficiency simulator for fully-digital, hybrid and DMA transmitters
// Copyright (C) 2026 The mimo-ee authors
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

#include "mimo_ee/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <spdlog/spdlog.h>

namespace mimo_ee
{

namespace
{

std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string short_num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

double parse_double(const std::string& field)
{
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (end == field.c_str() || *end != '\0')
        throw Error("malformed number '" + field + "' in CSV");
    return v;
}

void write_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw Error("cannot open " + path.string() + " for writing");
    out << text;
    out.flush();
    if (!out)
        throw Error("write to " + path.string() + " failed");
}

} // namespace

std::string to_csv(const std::vector<SweepRow>& rows)
{
    std::string out = std::string(kCsvHeader) + "\n";
    for (const auto& r : rows)
    {
        out += num(r.axis) + "," + r.label + "," + std::to_string(r.trials) + "," + num(r.mean_ee) + "," +
               num(r.se_ee) + "," + num(r.mean_mse) + "," + num(r.se_mse) + "," + num(r.mean_pg) + "," +
               num(r.mean_ptotal) + "\n";
    }
    return out;
}

std::vector<SweepRow> parse_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != kCsvHeader)
        throw Error("CSV header mismatch");
    std::vector<SweepRow> rows;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        std::vector<std::string> f;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');)
            f.push_back(cell);
        if (f.size() != 9)
            throw Error("CSV row has " + std::to_string(f.size()) + " fields, expected 9");
        SweepRow r;
        r.axis = parse_double(f[0]);
        r.label = f[1];
        r.trials = static_cast<std::size_t>(std::stoull(f[2]));
        r.mean_ee = parse_double(f[3]);
        r.se_ee = parse_double(f[4]);
        r.mean_mse = parse_double(f[5]);
        r.se_mse = parse_double(f[6]);
        r.mean_pg = parse_double(f[7]);
        r.mean_ptotal = parse_double(f[8]);
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string to_svg(const SweepResult& result, const std::string& metric)
{
    if (metric != "ee" && metric != "mse")
        throw InvalidArgument("metric must be 'ee' or 'mse'");
    const bool ee = metric == "ee";
    auto value = [ee](const SweepRow& r) { return ee ? r.mean_ee : r.mean_mse; };
    auto err = [ee](const SweepRow& r) { return ee ? r.se_ee : r.se_mse; };

    constexpr double W = 720, H = 440, L = 80, R = 170, T = 40, B = 60;
    double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
    for (const auto& r : result.rows)
    {
        x0 = std::min(x0, r.axis);
        x1 = std::max(x1, r.axis);
        y0 = std::min(y0, value(r) - err(r));
        y1 = std::max(y1, value(r) + err(r));
    }
    if (x1 <= x0)
    {
        x0 -= 0.5;
        x1 += 0.5;
    }
    const double pad = y1 > y0 ? 0.05 * (y1 - y0) : std::max(1e-12, 0.05 * std::abs(y0));
    y0 -= pad;
    y1 += pad;
    auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2"};
    std::ostringstream s;
    s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
    s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
      << "\" stroke=\"black\"/>\n";
    s << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 4; ++i)
    {
        const double yv = y0 + (y1 - y0) * i / 4.0;
        s << "<text x=\"" << L - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << short_num(yv)
          << "</text>\n";
    }
    for (double xv : result.values)
        s << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">" << short_num(xv)
          << "</text>\n";

    const char* xlabel = "point";
    switch (result.axis)
    {
    case SweepAxis::Antennas: xlabel = "N / N_t"; break;
    case SweepAxis::Power: xlabel = "P_g^max (dBm)"; break;
    case SweepAxis::Spacing: xlabel = "x spacing (wavelengths)"; break;
    case SweepAxis::None: break;
    }
    s << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 18 << "\" text-anchor=\"middle\">" << xlabel
      << "</text>\n";
    s << "<text x=\"18\" y=\"" << (T + H - B) / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << (T + H - B) / 2 << ")\">" << (ee ? "energy efficiency (bits/s/Hz/W)" : "MSE") << "</text>\n";

    const auto labels = result.labels();
    for (std::size_t i = 0; i < labels.size(); ++i)
    {
        const char* c = colors[i % (sizeof colors / sizeof *colors)];
        const bool dashed = labels[i].find('@') != std::string::npos;
        const auto series = result.series(labels[i]);
        s << "<polyline fill=\"none\" stroke=\"" << c << "\" stroke-width=\"2\""
          << (dashed ? " stroke-dasharray=\"6 4\"" : "") << " points=\"";
        for (const auto& r : series)
            s << px(r.axis) << "," << py(value(r)) << " ";
        s << "\"/>\n";
        for (const auto& r : series)
        {
            s << "<circle cx=\"" << px(r.axis) << "\" cy=\"" << py(value(r)) << "\" r=\"3\" fill=\"" << c << "\"/>\n";
            if (err(r) > 0.0)
                s << "<line x1=\"" << px(r.axis) << "\" y1=\"" << py(value(r) - err(r)) << "\" x2=\"" << px(r.axis)
                  << "\" y2=\"" << py(value(r) + err(r)) << "\" stroke=\"" << c << "\"/>\n";
        }
        const double ly = T + 18.0 * static_cast<double>(i);
        s << "<line x1=\"" << W - R + 15 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 40 << "\" y2=\"" << ly
          << "\" stroke=\"" << c << "\" stroke-width=\"2\"" << (dashed ? " stroke-dasharray=\"6 4\"" : "")
          << "/>\n";
        s << "<text x=\"" << W - R + 46 << "\" y=\"" << ly + 4 << "\">" << labels[i] << "</text>\n";
    }
    s << "</svg>\n";
    return s.str();
}

std::vector<std::filesystem::path> emit(const SweepResult& result, const std::filesystem::path& dir)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec)
        throw Error("cannot create output directory " + dir.string() + ": " + ec.message());

    std::vector<std::filesystem::path> written;
    const auto csv = dir / ("sweep_" + std::string(to_string(result.axis)) + ".csv");
    write_file(csv, to_csv(result.rows));
    written.push_back(csv);
    if (result.rows.empty())
    {
        spdlog::warn("no results to plot; wrote header-only {}", csv.string());
        return written;
    }
    for (const char* metric : {"ee", "mse"})
    {
        const auto path = dir / (std::string(metric) + ".svg");
        write_file(path, to_svg(result, metric));
        written.push_back(path);
    }
    return written;
}

} // namespace mimo_ee
