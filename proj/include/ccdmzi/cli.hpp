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

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ccdmzi::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitUsage = 2,
    kExitParse = 3,
    kExitValidation = 4,
};

/// Runs one command line (argv[0] is the program name) and returns its exit code.
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

/// Angle in radians from "1.25", "0.5pi", "-2 pi" or "pi".
double parse_angle(std::string_view text);

}  // namespace ccdmzi::cli
