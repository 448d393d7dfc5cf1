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

#include <cstdlib>
#include <string>

#include "ccdmzi/errors.hpp"
#include "kernels_internal.hpp"

namespace ccdmzi::kernels {
namespace {

bool cpu_supports(SimdLevel level) {
    switch (level) {
        case SimdLevel::Scalar:
            return true;
        case SimdLevel::Avx2:
#if defined(CCDMZI_HAVE_AVX2_KERNELS)
            __builtin_cpu_init();
            return __builtin_cpu_supports("avx2");
#else
            return false;
#endif
        case SimdLevel::Neon:
#if defined(CCDMZI_HAVE_NEON_KERNELS)
            return true;
#else
            return false;
#endif
    }
    return false;
}

SimdLevel detect() {
    SimdLevel best = SimdLevel::Scalar;
    for (SimdLevel level : {SimdLevel::Avx2, SimdLevel::Neon}) {
        if (cpu_supports(level)) {
            best = level;
        }
    }
    if (const char* env = std::getenv("CCDMZI_SIMD")) {
        const std::string want(env);
        for (SimdLevel level : {SimdLevel::Scalar, SimdLevel::Avx2, SimdLevel::Neon}) {
            if (want == to_string(level) && cpu_supports(level)) {
                return level;
            }
        }
    }
    return best;
}

}  // namespace

std::string_view to_string(SimdLevel level) {
    switch (level) {
        case SimdLevel::Scalar:
            return "scalar";
        case SimdLevel::Avx2:
            return "avx2";
        case SimdLevel::Neon:
            return "neon";
    }
    return "unknown";
}

SimdLevel active_simd_level() {
    static const SimdLevel level = detect();
    return level;
}

std::vector<SimdLevel> available_simd_levels() {
    std::vector<SimdLevel> levels;
    for (SimdLevel level : {SimdLevel::Scalar, SimdLevel::Avx2, SimdLevel::Neon}) {
        if (cpu_supports(level)) {
            levels.push_back(level);
        }
    }
    return levels;
}

void propagate(SimdLevel level, std::span<const KernelOp> ops, Complex e0, std::size_t begin, std::size_t end,
               double* ia, double* ib) {
    switch (level) {
#if defined(CCDMZI_HAVE_AVX2_KERNELS)
        case SimdLevel::Avx2:
            detail::propagate_avx2(ops, e0, begin, end, ia, ib);
            return;
#endif
#if defined(CCDMZI_HAVE_NEON_KERNELS)
        case SimdLevel::Neon:
            detail::propagate_neon(ops, e0, begin, end, ia, ib);
            return;
#endif
        case SimdLevel::Scalar:
            detail::propagate_scalar(ops, e0, begin, end, ia, ib);
            return;
        default:
            throw ValidationError("propagate: SIMD level " + std::string(to_string(level)) + " not built");
    }
}

void correlate(SimdLevel level, const double* ia, const double* ib, double denom, double* g2, std::size_t count) {
    switch (level) {
#if defined(CCDMZI_HAVE_AVX2_KERNELS)
        case SimdLevel::Avx2:
            detail::correlate_avx2(ia, ib, denom, g2, count);
            return;
#endif
#if defined(CCDMZI_HAVE_NEON_KERNELS)
        case SimdLevel::Neon:
            detail::correlate_neon(ia, ib, denom, g2, count);
            return;
#endif
        case SimdLevel::Scalar:
            detail::correlate_scalar(ia, ib, denom, g2, count);
            return;
        default:
            throw ValidationError("correlate: SIMD level " + std::string(to_string(level)) + " not built");
    }
}

}  // namespace ccdmzi::kernels
