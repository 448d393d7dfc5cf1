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

// Compiled with -mavx2; only reached after a runtime CPU check.

#include <immintrin.h>

#include "kernels_internal.hpp"

namespace ccdmzi::kernels::detail {
namespace {

inline __m256d cmul_re(__m256d ar, __m256d ai, __m256d br, __m256d bi) {
    return _mm256_sub_pd(_mm256_mul_pd(ar, br), _mm256_mul_pd(ai, bi));
}

inline __m256d cmul_im(__m256d ar, __m256d ai, __m256d br, __m256d bi) {
    return _mm256_add_pd(_mm256_mul_pd(ar, bi), _mm256_mul_pd(ai, br));
}

}  // namespace

void propagate_avx2(std::span<const KernelOp> ops, Complex e0, std::size_t begin, std::size_t end, double* ia,
                    double* ib) {
    constexpr std::size_t kLanes = 4;
    std::size_t k = begin;
    for (; k + kLanes <= end; k += kLanes) {
        __m256d ur = _mm256_set1_pd(e0.real());
        __m256d ui = _mm256_set1_pd(e0.imag());
        __m256d lr = _mm256_setzero_pd();
        __m256d li = _mm256_setzero_pd();
        for (const KernelOp& op : ops) {
            switch (op.kind) {
                case KernelOp::Kind::Fixed: {
                    const __m256d m0 = _mm256_set1_pd(op.m[0]);
                    const __m256d m1 = _mm256_set1_pd(op.m[1]);
                    const __m256d m2 = _mm256_set1_pd(op.m[2]);
                    const __m256d m3 = _mm256_set1_pd(op.m[3]);
                    const __m256d m4 = _mm256_set1_pd(op.m[4]);
                    const __m256d m5 = _mm256_set1_pd(op.m[5]);
                    const __m256d m6 = _mm256_set1_pd(op.m[6]);
                    const __m256d m7 = _mm256_set1_pd(op.m[7]);
                    const __m256d nur = _mm256_add_pd(cmul_re(m0, m1, ur, ui), cmul_re(m2, m3, lr, li));
                    const __m256d nui = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(m0, ui), _mm256_mul_pd(m1, ur)),
                                                      _mm256_add_pd(_mm256_mul_pd(m2, li), _mm256_mul_pd(m3, lr)));
                    const __m256d nlr = _mm256_add_pd(cmul_re(m4, m5, ur, ui), cmul_re(m6, m7, lr, li));
                    const __m256d nli = _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(m4, ui), _mm256_mul_pd(m5, ur)),
                                                      _mm256_add_pd(_mm256_mul_pd(m6, li), _mm256_mul_pd(m7, lr)));
                    ur = nur;
                    ui = nui;
                    lr = nlr;
                    li = nli;
                    break;
                }
                case KernelOp::Kind::Scale: {
                    const __m256d s = _mm256_set1_pd(op.m[0]);
                    ur = _mm256_mul_pd(ur, s);
                    ui = _mm256_mul_pd(ui, s);
                    lr = _mm256_mul_pd(lr, s);
                    li = _mm256_mul_pd(li, s);
                    break;
                }
                case KernelOp::Kind::PhaseUpper:
                case KernelOp::Kind::PhaseLower: {
                    const __m256d tr = _mm256_loadu_pd(op.table_re + k);
                    const __m256d ti = _mm256_loadu_pd(op.table_im + k);
                    const __m256d rr = _mm256_set1_pd(op.rot_re);
                    const __m256d ri = _mm256_set1_pd(op.rot_im);
                    const __m256d fr = cmul_re(tr, ti, rr, ri);
                    const __m256d fi = cmul_im(tr, ti, rr, ri);
                    if (op.kind == KernelOp::Kind::PhaseUpper) {
                        const __m256d nr = cmul_re(ur, ui, fr, fi);
                        ui = cmul_im(ur, ui, fr, fi);
                        ur = nr;
                    } else {
                        const __m256d nr = cmul_re(lr, li, fr, fi);
                        li = cmul_im(lr, li, fr, fi);
                        lr = nr;
                    }
                    break;
                }
            }
        }
        _mm256_storeu_pd(ia + k, _mm256_add_pd(_mm256_mul_pd(ur, ur), _mm256_mul_pd(ui, ui)));
        _mm256_storeu_pd(ib + k, _mm256_add_pd(_mm256_mul_pd(lr, lr), _mm256_mul_pd(li, li)));
    }
    if (k < end) {
        propagate_scalar(ops, e0, k, end, ia, ib);
    }
}

void correlate_avx2(const double* ia, const double* ib, double denom, double* g2, std::size_t count) {
    const __m256d d = _mm256_set1_pd(denom);
    std::size_t k = 0;
    for (; k + 4 <= count; k += 4) {
        const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(ia + k), _mm256_loadu_pd(ib + k));
        _mm256_storeu_pd(g2 + k, _mm256_div_pd(prod, d));
    }
    correlate_scalar(ia + k, ib + k, denom, g2 + k, count - k);
}

}  // namespace ccdmzi::kernels::detail
