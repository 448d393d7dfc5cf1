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

#include "ccdmzi/manifest.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>

#include "ccdmzi/errors.hpp"

namespace ccdmzi::cli {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace

std::string format_param(double v) {
    char buf[40];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf, static_cast<std::size_t>(n));
}

void RunManifest::write(std::ostream& out) const {
    std::map<std::string, std::string> all = parameters;
    all["subcommand"] = subcommand;
    all["tool_version"] = tool_version;
    if (seed) {
        all["seed"] = std::to_string(*seed);
    }
    out << "# ccdmzi run manifest\n";
    for (const auto& [key, value] : all) {
        out << key << " = " << value << '\n';
    }
}

RunManifest RunManifest::read(std::istream& in) {
    RunManifest m;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t.front() == '#') {
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            throw ValidationError("manifest line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (key.empty()) {
            throw ValidationError("manifest line " + std::to_string(line_no) + ": empty key");
        }
        if (key == "subcommand") {
            m.subcommand = value;
        } else if (key == "tool_version") {
            m.tool_version = value;
        } else if (key == "seed") {
            std::uint64_t s = 0;
            const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), s);
            if (ec != std::errc() || ptr != value.data() + value.size()) {
                throw ValidationError("manifest: bad seed '" + value + "'");
            }
            m.seed = s;
        } else {
            m.parameters[key] = value;
        }
    }
    if (m.subcommand.empty()) {
        throw ValidationError("manifest has no subcommand entry");
    }
    return m;
}

}  // namespace ccdmzi::cli
