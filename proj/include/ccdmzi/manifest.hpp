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

#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

namespace ccdmzi::cli {

/// Resolved parameters of a run, written next to every CSV as "<out>.manifest".
///
/// Text format, one entry per line:
///
///   # comment
///   key = value
///
/// Keys are the long flag names of the subcommand plus the reserved keys
/// "subcommand", "tool_version" and (noise runs) "seed". Entries appear in
/// lexicographic key order; numbers use 17 significant digits.
struct RunManifest {
    std::string subcommand;
    std::map<std::string, std::string> parameters;
    std::string tool_version;
    std::optional<std::uint64_t> seed;

    void write(std::ostream& out) const;
    static RunManifest read(std::istream& in);

    static std::string sidecar_path(const std::string& csv_path) { return csv_path + ".manifest"; }
};

std::string format_param(double v);

}  // namespace ccdmzi::cli
