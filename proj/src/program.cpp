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

#include "ccdmzi/program.hpp"

#include <algorithm>
#include <cmath>

#include "ccdmzi/errors.hpp"

namespace ccdmzi {
namespace {

Complex unit_phasor(double phase) { return {std::cos(phase), std::sin(phase)}; }

double jitter_for(int slot, std::span<const double> jitter) {
    if (slot < 0 || jitter.empty()) {
        return 0.0;
    }
    if (static_cast<std::size_t>(slot) >= jitter.size()) {
        throw ValidationError("jitter vector shorter than the program's slot count");
    }
    return jitter[static_cast<std::size_t>(slot)];
}

}  // namespace

Element Element::fixed(const TransferMatrix& m) {
    Element e;
    e.kind = Kind::Fixed;
    e.matrix = m;
    return e;
}

Element Element::scale(double t) {
    Element e;
    e.kind = Kind::Scale;
    e.factor = t;
    return e;
}

Element Element::phase_upper(PhaseSetting p, int jitter_slot) {
    Element e;
    e.kind = Kind::PhaseUpper;
    e.phase = p;
    e.jitter_slot = jitter_slot;
    return e;
}

Element Element::phase_lower(PhaseSetting p, int jitter_slot) {
    Element e;
    e.kind = Kind::PhaseLower;
    e.phase = p;
    e.jitter_slot = jitter_slot;
    return e;
}

TransferMatrix Element::matrix_at(double phi, double jitter) const {
    switch (kind) {
        case Kind::Fixed:
            return matrix;
        case Kind::Scale:
            return TransferMatrix::diagonal(factor, factor);
        case Kind::PhaseUpper:
            return ccdmzi::phase_upper(phase.at(phi) + jitter);
        case Kind::PhaseLower:
            return ccdmzi::phase_lower(phase.at(phi) + jitter);
    }
    return matrix;
}

void Program::push(const Element& e) {
    elements_.push_back(e);
    if (e.jitter_slot >= 0) {
        jitter_slots_ = std::max(jitter_slots_, static_cast<std::size_t>(e.jitter_slot) + 1);
    }
}

void Program::append(const Program& other) {
    for (const Element& e : other.elements_) {
        push(e);
    }
}

TransferMatrix Program::evaluate(double phi, std::span<const double> jitter) const {
    TransferMatrix m = TransferMatrix::identity();
    for (const Element& e : elements_) {
        m = mat_mul(e.matrix_at(phi, jitter_for(e.jitter_slot, jitter)), m);
    }
    return m;
}

Program chain_program(const ChainConfig& cfg, JitterMode mode) {
    cfg.validate();
    const TransferMatrix bs = beam_splitter();
    Program p;
    for (std::uint32_t block = 0; block < cfg.n; ++block) {
        if (block > 0 && cfg.eta != 1.0) {
            p.push(Element::scale(cfg.eta));
            p.push(Element::scale(cfg.eta));
        }
        const int b = static_cast<int>(block);
        const int d_slot = mode == JitterMode::CorrelatedPerBlock ? b : 2 * b;
        const int dp_slot = mode == JitterMode::CorrelatedPerBlock ? b : 2 * b + 1;
        p.push(Element::fixed(bs));
        p.push(Element::phase_lower({1.0, 0.0}, d_slot));
        p.push(Element::fixed(bs));
        p.push(Element::fixed(bs));
        p.push(Element::phase_upper({1.0, 0.0}, dp_slot));
        p.push(Element::fixed(bs));
    }
    return p;
}

Program mzi_program() {
    const TransferMatrix bs = beam_splitter();
    Program p;
    p.push(Element::fixed(bs));
    p.push(Element::phase_lower({1.0, 0.0}, 0));
    p.push(Element::fixed(bs));
    return p;
}

std::vector<double> PhaseGrid::points() const {
    std::vector<double> out(samples);
    for (std::size_t k = 0; k < samples; ++k) {
        out[k] = at(k);
    }
    return out;
}

SweepPlan::SweepPlan(const Program& program, const PhaseGrid& grid)
    : grid_(grid), elements_(program.elements().begin(), program.elements().end()),
      jitter_slots_(program.jitter_slots()) {
    if (grid.samples == 0 || !(grid.window > 0.0) || !std::isfinite(grid.window) || !std::isfinite(grid.start)) {
        throw ValidationError("phase grid needs samples > 0 and a finite positive window");
    }
    std::vector<double> scales;
    table_of_element_.assign(elements_.size(), -1);
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        const Element& e = elements_[i];
        if (e.kind != Element::Kind::PhaseUpper && e.kind != Element::Kind::PhaseLower) {
            continue;
        }
        auto it = std::find(scales.begin(), scales.end(), e.phase.scale);
        if (it == scales.end()) {
            scales.push_back(e.phase.scale);
            std::vector<double> re(grid.samples);
            std::vector<double> im(grid.samples);
            for (std::size_t k = 0; k < grid.samples; ++k) {
                const double theta = e.phase.scale * grid.at(k);
                re[k] = std::cos(theta);
                im[k] = std::sin(theta);
            }
            table_re_.push_back(std::move(re));
            table_im_.push_back(std::move(im));
            it = scales.end() - 1;
        }
        table_of_element_[i] = static_cast<int>(it - scales.begin());
    }
}

void SweepPlan::run(Complex e0, std::span<const double> jitter, std::size_t begin, std::size_t end, double* ia,
                    double* ib, kernels::SimdLevel level) const {
    using kernels::KernelOp;
    if (end > grid_.samples || begin > end) {
        throw ValidationError("sweep range outside the grid");
    }
    std::vector<KernelOp> ops;
    ops.reserve(elements_.size());
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        const Element& e = elements_[i];
        switch (e.kind) {
            case Element::Kind::Fixed:
                ops.push_back(KernelOp::fixed(e.matrix));
                break;
            case Element::Kind::Scale:
                ops.push_back(KernelOp::scale(e.factor));
                break;
            case Element::Kind::PhaseUpper:
            case Element::Kind::PhaseLower: {
                const auto t = static_cast<std::size_t>(table_of_element_[i]);
                const double rotation = e.phase.offset + jitter_for(e.jitter_slot, jitter);
                ops.push_back(KernelOp::phase(e.kind == Element::Kind::PhaseUpper ? KernelOp::Kind::PhaseUpper
                                                                                  : KernelOp::Kind::PhaseLower,
                                              table_re_[t].data(), table_im_[t].data(), unit_phasor(rotation)));
                break;
            }
        }
    }
    kernels::propagate(level, ops, e0, begin, end, ia, ib);
}

}  // namespace ccdmzi
