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

#include "ccdmzi/analysis.hpp"

namespace ccdmzi {

struct NoisyTrace;

/// Header "phi,i_a,i_b,g2"; every value printed with 17 significant digits.
void write_trace_csv(std::ostream& out, const CorrelationTrace& trace);

/// Header "phi,i_a,i_b,g2,ci95_g2" with trial-mean columns.
void write_noisy_csv(std::ostream& out, const NoisyTrace& trace);

/// Reads either CSV flavour (extra trailing columns are ignored). The window
/// is reconstructed from the grid spacing. Throws ValidationError on
/// malformed input.
CorrelationTrace read_trace_csv(std::istream& in);

std::string format_value(double v);

}  // namespace ccdmzi
