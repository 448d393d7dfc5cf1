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
#include <span>

#include "ccdmzi/kernels.hpp"

namespace ccdmzi::kernels::detail {

void propagate_scalar(std::span<const KernelOp> ops, Complex e0, std::size_t begin, std::size_t end, double* ia,
                      double* ib);
void correlate_scalar(const double* ia, const double* ib, double denom, double* g2, std::size_t count);

#if defined(__x86_64__) || defined(_M_X64) || defined(__i386__)
#define CCDMZI_HAVE_AVX2_KERNELS 1
void propagate_avx2(std::span<const KernelOp> ops, Complex e0, std::size_t begin, std::size_t end, double* ia,
                    double* ib);
void correlate_avx2(const double* ia, const double* ib, double denom, double* g2, std::size_t count);
#endif

#if defined(__aarch64__)
#define CCDMZI_HAVE_NEON_KERNELS 1
void propagate_neon(std::span<const KernelOp> ops, Complex e0, std::size_t begin, std::size_t end, double* ia,
                    double* ib);
void correlate_neon(const double* ia, const double* ib, double denom, double* g2, std::size_t count);
#endif

}  // namespace ccdmzi::kernels::detail
