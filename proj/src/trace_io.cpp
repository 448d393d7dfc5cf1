// Copyright 2026 The ccdmzi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ccdmzi/trace_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

#include "ccdmzi/errors.hpp"
#include "ccdmzi/noise.hpp"

namespace ccdmzi {
namespace {

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t begin = 0;
    for (;;) {
        const std::size_t comma = line.find(',', begin);
        fields.push_back(line.substr(begin, comma - begin));
        if (comma == std::string_view::npos) {
            return fields;
        }
        begin = comma + 1;
    }
}

double parse_field(std::string_view field, std::size_t line_no) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
    if (ec != std::errc() || ptr != field.data() + field.size() || !std::isfinite(v)) {
        throw ValidationError("csv line " + std::to_string(line_no) + ": bad number '" + std::string(field) + "'");
    }
    return v;
}

}  // namespace

std::string format_value(double v) {
    char buf[40];
    const int n = std::snprintf(buf, sizeof buf, "%.16e", v);
    return std::string(buf, static_cast<std::size_t>(n));
}

void write_trace_csv(std::ostream& out, const CorrelationTrace& trace) {
    trace.validate();
    out << "phi,i_a,i_b,g2\n";
    for (std::size_t k = 0; k < trace.size(); ++k) {
        out << format_value(trace.phi[k]) << ',' << format_value(trace.i_a[k]) << ',' << format_value(trace.i_b[k])
            << ',' << format_value(trace.g2[k]) << '\n';
    }
}

void write_noisy_csv(std::ostream& out, const NoisyTrace& trace) {
    out << "phi,i_a,i_b,g2,ci95_g2\n";
    for (std::size_t k = 0; k < trace.phi.size(); ++k) {
        out << format_value(trace.phi[k]) << ',' << format_value(trace.mean_i_a[k]) << ','
            << format_value(trace.mean_i_b[k]) << ',' << format_value(trace.mean_g2[k]) << ','
            << format_value(trace.ci95_g2[k]) << '\n';
    }
}

CorrelationTrace read_trace_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw ValidationError("csv: empty input");
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    const auto header = split(line);
    if (header.size() < 4 || header[0] != "phi" || header[1] != "i_a" || header[2] != "i_b" || header[3] != "g2") {
        throw ValidationError("csv: header must start with phi,i_a,i_b,g2");
    }
    CorrelationTrace trace;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const auto fields = split(line);
        if (fields.size() != header.size()) {
            throw ValidationError("csv line " + std::to_string(line_no) + ": expected " +
                                  std::to_string(header.size()) + " fields");
        }
        trace.phi.push_back(parse_field(fields[0], line_no));
        trace.i_a.push_back(parse_field(fields[1], line_no));
        trace.i_b.push_back(parse_field(fields[2], line_no));
        trace.g2.push_back(parse_field(fields[3], line_no));
    }
    trace.validate();
    const double s = static_cast<double>(trace.size());
    trace.window = (trace.phi.back() - trace.phi.front()) * s / (s - 1.0);
    trace.provenance = "csv";
    return trace;
}

}  // namespace ccdmzi
