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
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ccdmzi/elements.hpp"
#include "ccdmzi/program.hpp"

namespace ccdmzi {

inline constexpr double kSpeedOfLight = 299792458.0;  // m/s

/// Sampled output intensities and their normalized correlation over a
/// uniform phase grid [start, start + window).
struct CorrelationTrace {
    std::vector<double> phi;
    std::vector<double> i_a;
    std::vector<double> i_b;
    std::vector<double> g2;
    double window = 0.0;
    std::string provenance;

    std::size_t size() const { return phi.size(); }

    /// Equal lengths, at least two samples, constant spacing within 1e-12.
    void validate() const;
};

struct AnalysisResult {
    double period_phase = 0.0;  // radians
    double visibility = 0.0;
    double lambda_ratio = 0.0;  // lambda_CB / lambda0
    double lambda_cb = 0.0;
    std::uint32_t inferred_n = 0;
    std::uint32_t equivalent_photon_number = 0;
};

struct CoherenceBudget {
    double linewidth_hz = 0.0;
    double coherence_length_m = 0.0;

    double coherence_length_km() const { return coherence_length_m / 1000.0; }
};

/// Compensated (Neumaier) mean.
double mean(std::span<const double> values);

/// (max - min) / (max + min); 0 for an all-zero sequence.
double visibility(std::span<const double> values);

/// Closed-form n-th order output intensities, including the eta^(4(n-1))
/// loss factor.
std::pair<double, double> intensities_n(const ChainConfig& cfg, double phi);

/// Single-MZI correlation (1 - cos 2 phi) / 2.
double g2_first_order(double phi);

/// Throws unless samples >= 16 n and window holds a whole number of g2
/// periods pi / (2n).
void validate_chain_sweep(const ChainConfig& cfg, std::size_t samples, double window);

/// Sweeps the chain element by element over [start, start + window).
/// Preconditions as validate_chain_sweep.
CorrelationTrace g2_trace(const ChainConfig& cfg, std::size_t samples, double window = 2.0 * kPi,
                          double start = 0.0);

/// Sweeps an arbitrary element program with input [e0; 0]. Throws
/// NoModulationError when either port is dark over the whole window.
CorrelationTrace program_trace(const Program& program, Complex e0, const PhaseGrid& grid,
                               std::string provenance = {});

/// Fills g2 from i_a and i_b using window means.
void normalize_g2(CorrelationTrace& trace);

/// Period of the dominant nonzero DFT bin of g2 - mean(g2): window / k*.
/// Ties within 1e-9 relative go to the lowest k.
double detect_period(const CorrelationTrace& trace);

AnalysisResult de_broglie_wavelength(double period_phase, double lambda0, double visibility = 1.0);

/// detect_period followed by de_broglie_wavelength with the trace's g2 visibility.
AnalysisResult analyze(const CorrelationTrace& trace, double lambda0 = 1.0);

CoherenceBudget coherence_budget(double linewidth_hz);

}  // namespace ccdmzi
