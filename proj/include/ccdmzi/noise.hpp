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

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ccdmzi/elements.hpp"
#include "ccdmzi/program.hpp"

namespace ccdmzi {

struct NoiseConfig {
    double sigma = 0.0;  // std. dev. of Gaussian phase jitter, radians
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    JitterMode mode = JitterMode::CorrelatedPerBlock;
    double dark_threshold = 0.01;  // fraction of total output tolerated on the dark port

    void validate() const;
};

std::string_view to_string(JitterMode mode);
JitterMode parse_jitter_mode(std::string_view text);

/// Trial means over the ensemble. ci95_g2 is the normal-approximation 95%
/// half-width of mean_g2.
struct NoisyTrace {
    std::vector<double> phi;
    std::vector<double> mean_i_a;
    std::vector<double> mean_i_b;
    std::vector<double> mean_g2;
    std::vector<double> ci95_g2;
    double visibility = 0.0;
    double visibility_ci95 = 0.0;
    double window = 0.0;
    std::uint64_t trials = 0;
};

struct ErrorRate {
    double rate = 0.0;
    double ci95 = 0.0;
    std::uint64_t errors = 0;
    std::uint64_t trials = 0;
};

/// Jitter draws for one trial: one per block (correlated) or two per block
/// (independent), each sigma * N(0, 1).
std::vector<double> trial_jitter(const ChainConfig& cfg, const NoiseConfig& noise, std::uint64_t trial);

/// Output intensities of one trial over the grid.
void trial_intensities(const ChainConfig& cfg, const NoiseConfig& noise, const PhaseGrid& grid,
                       std::uint64_t trial, std::vector<double>& ia, std::vector<double>& ib);

/// Runs the ensemble on `threads` workers (0 = hardware concurrency). The
/// result is bit-identical for every thread count.
NoisyTrace run_noise_ensemble(const ChainConfig& cfg, const NoiseConfig& noise, std::size_t samples,
                              double window = 2.0 * kPi, unsigned threads = 0);

/// Fraction of trials where the nominally dark port at basis_phi (a g2 zero,
/// k pi / (2n)) carries more than noise.dark_threshold of the output.
ErrorRate anticorrelation_error_rate(const ChainConfig& cfg, const NoiseConfig& noise, double basis_phi);

}  // namespace ccdmzi
