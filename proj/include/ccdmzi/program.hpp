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
#include <vector>

#include "ccdmzi/elements.hpp"
#include "ccdmzi/kernels.hpp"
#include "ccdmzi/linalg.hpp"

namespace ccdmzi {

/// How phase jitter is shared among the shifters of a chain.
enum class JitterMode : std::uint8_t {
    CorrelatedPerBlock,     // one draw per CCD block, shared by its two shifters
    IndependentPerShifter,  // one draw per shifter
};

/// Phase angle scale * phi + offset, in radians.
struct PhaseSetting {
    double scale = 1.0;
    double offset = 0.0;

    double at(double phi) const { return scale * phi + offset; }
};

/// One element of a flattened optical path.
struct Element {
    enum class Kind : std::uint8_t { Fixed, PhaseUpper, PhaseLower, Scale };

    Kind kind = Kind::Fixed;
    TransferMatrix matrix = TransferMatrix::identity();
    double factor = 1.0;
    PhaseSetting phase{};
    int jitter_slot = -1;  // index into a trial's jitter draws; -1 = never jittered

    static Element fixed(const TransferMatrix& m);
    static Element scale(double t);
    static Element phase_upper(PhaseSetting p, int jitter_slot = -1);
    static Element phase_lower(PhaseSetting p, int jitter_slot = -1);

    TransferMatrix matrix_at(double phi, double jitter = 0.0) const;
};

/// Ordered element list, first element acts on the field first.
class Program {
public:
    void push(const Element& e);
    void append(const Program& other);

    std::span<const Element> elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    bool empty() const { return elements_.empty(); }

    /// Number of distinct jitter slots referenced (max slot + 1).
    std::size_t jitter_slots() const { return jitter_slots_; }

    /// Product of all element matrices; jitter[s] is added to the phase of
    /// every element on slot s. An empty span means no jitter.
    TransferMatrix evaluate(double phi, std::span<const double> jitter = {}) const;

private:
    std::vector<Element> elements_;
    std::size_t jitter_slots_ = 0;
};

/// D then D' per block, loss(eta) twice at every connection.
Program chain_program(const ChainConfig& cfg, JitterMode mode = JitterMode::CorrelatedPerBlock);

/// A single MZI (D block).
Program mzi_program();

/// Uniform grid phi_k = start + k * (window / samples), k = 0..samples-1.
struct PhaseGrid {
    double start = 0.0;
    double window = 2.0 * kPi;
    std::size_t samples = 4096;

    double step() const { return window / static_cast<double>(samples); }
    double at(std::size_t k) const { return start + static_cast<double>(k) * step(); }
    std::vector<double> points() const;
};

/// A program bound to a grid: per-sample phasors are tabulated once and each
/// run only supplies constant rotations (offsets plus jitter).
class SweepPlan {
public:
    SweepPlan(const Program& program, const PhaseGrid& grid);

    const PhaseGrid& grid() const { return grid_; }
    std::size_t samples() const { return grid_.samples; }
    std::size_t jitter_slots() const { return jitter_slots_; }

    /// Output intensities for input [e0; 0] at samples [begin, end).
    void run(Complex e0, std::span<const double> jitter, std::size_t begin, std::size_t end, double* ia, double* ib,
             kernels::SimdLevel level) const;

    void run(Complex e0, std::span<const double> jitter, double* ia, double* ib) const {
        run(e0, jitter, 0, grid_.samples, ia, ib, kernels::active_simd_level());
    }

private:
    PhaseGrid grid_;
    std::vector<Element> elements_;
    std::vector<int> table_of_element_;
    std::vector<std::vector<double>> table_re_;
    std::vector<std::vector<double>> table_im_;
    std::size_t jitter_slots_ = 0;
};

}  // namespace ccdmzi
