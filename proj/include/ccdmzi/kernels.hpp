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

// Batched two-port propagation over a phase grid.
//
// A sweep evaluates the same element sequence at every grid sample. Each
// kernel walks the element list once per lane group, keeping the field pair
// in registers, and writes |upper|^2 and |lower|^2 per sample. All variants
// perform the same IEEE operations in the same order (no FMA), so their
// results agree bit-for-bit on a given host; tests still compare with a
// tolerance so platform differences in libm stay out of the contract.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ccdmzi/linalg.hpp"

namespace ccdmzi::kernels {

enum class SimdLevel : std::uint8_t { Scalar, Avx2, Neon };

std::string_view to_string(SimdLevel level);

struct KernelOp {
    enum class Kind : std::uint8_t { Fixed, PhaseUpper, PhaseLower, Scale };

    Kind kind = Kind::Fixed;
    // Fixed: re/im of a11, a12, a21, a22. Scale: m[0] is the real factor.
    double m[8] = {};
    // Phase: per-sample e^{i scale phi_k} and a constant rotation applied on top.
    const double* table_re = nullptr;
    const double* table_im = nullptr;
    double rot_re = 1.0;
    double rot_im = 0.0;

    static KernelOp fixed(const TransferMatrix& t);
    static KernelOp scale(double s);
    static KernelOp phase(Kind arm, const double* table_re, const double* table_im, Complex rotation);
};

/// Level picked at startup: the best the CPU supports, unless the
/// CCDMZI_SIMD environment variable (scalar|avx2|neon) asks for a lower one.
SimdLevel active_simd_level();

/// Every level compiled in and supported by this CPU, Scalar first.
std::vector<SimdLevel> available_simd_levels();

/// Propagates input [e0; 0] through `ops` for samples [begin, end) and
/// stores output intensities into ia[k], ib[k].
void propagate(SimdLevel level, std::span<const KernelOp> ops, Complex e0, std::size_t begin, std::size_t end,
               double* ia, double* ib);

inline void propagate(std::span<const KernelOp> ops, Complex e0, std::size_t begin, std::size_t end, double* ia,
                      double* ib) {
    propagate(active_simd_level(), ops, e0, begin, end, ia, ib);
}

/// g2[k] = (ia[k] * ib[k]) / denom.
void correlate(SimdLevel level, const double* ia, const double* ib, double denom, double* g2, std::size_t count);

inline void correlate(const double* ia, const double* ib, double denom, double* g2, std::size_t count) {
    correlate(active_simd_level(), ia, ib, denom, g2, count);
}

}  // namespace ccdmzi::kernels
