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

// AArch64 Advanced SIMD variant, two samples per vector. Uses separate
// vmulq/vaddq (never vfmaq) to keep rounding identical to the scalar path.

#include <arm_neon.h>

#include "kernels_internal.hpp"

namespace ccdmzi::kernels::detail {
namespace {

inline float64x2_t cmul_re(float64x2_t ar, float64x2_t ai, float64x2_t br, float64x2_t bi) {
    return vsubq_f64(vmulq_f64(ar, br), vmulq_f64(ai, bi));
}

inline float64x2_t cmul_im(float64x2_t ar, float64x2_t ai, float64x2_t br, float64x2_t bi) {
    return vaddq_f64(vmulq_f64(ar, bi), vmulq_f64(ai, br));
}

}  // namespace

void propagate_neon(std::span<const KernelOp> ops, Complex e0, std::size_t begin, std::size_t end, double* ia,
                    double* ib) {
    constexpr std::size_t kLanes = 2;
    std::size_t k = begin;
    for (; k + kLanes <= end; k += kLanes) {
        float64x2_t ur = vdupq_n_f64(e0.real());
        float64x2_t ui = vdupq_n_f64(e0.imag());
        float64x2_t lr = vdupq_n_f64(0.0);
        float64x2_t li = vdupq_n_f64(0.0);
        for (const KernelOp& op : ops) {
            switch (op.kind) {
                case KernelOp::Kind::Fixed: {
                    float64x2_t m[8];
                    for (int i = 0; i < 8; ++i) {
                        m[i] = vdupq_n_f64(op.m[i]);
                    }
                    const float64x2_t nur = vaddq_f64(cmul_re(m[0], m[1], ur, ui), cmul_re(m[2], m[3], lr, li));
                    const float64x2_t nui = vaddq_f64(vaddq_f64(vmulq_f64(m[0], ui), vmulq_f64(m[1], ur)),
                                                      vaddq_f64(vmulq_f64(m[2], li), vmulq_f64(m[3], lr)));
                    const float64x2_t nlr = vaddq_f64(cmul_re(m[4], m[5], ur, ui), cmul_re(m[6], m[7], lr, li));
                    const float64x2_t nli = vaddq_f64(vaddq_f64(vmulq_f64(m[4], ui), vmulq_f64(m[5], ur)),
                                                      vaddq_f64(vmulq_f64(m[6], li), vmulq_f64(m[7], lr)));
                    ur = nur;
                    ui = nui;
                    lr = nlr;
                    li = nli;
                    break;
                }
                case KernelOp::Kind::Scale: {
                    const float64x2_t s = vdupq_n_f64(op.m[0]);
                    ur = vmulq_f64(ur, s);
                    ui = vmulq_f64(ui, s);
                    lr = vmulq_f64(lr, s);
                    li = vmulq_f64(li, s);
                    break;
                }
                case KernelOp::Kind::PhaseUpper:
                case KernelOp::Kind::PhaseLower: {
                    const float64x2_t tr = vld1q_f64(op.table_re + k);
                    const float64x2_t ti = vld1q_f64(op.table_im + k);
                    const float64x2_t rr = vdupq_n_f64(op.rot_re);
                    const float64x2_t ri = vdupq_n_f64(op.rot_im);
                    const float64x2_t fr = cmul_re(tr, ti, rr, ri);
                    const float64x2_t fi = cmul_im(tr, ti, rr, ri);
                    if (op.kind == KernelOp::Kind::PhaseUpper) {
                        const float64x2_t nr = cmul_re(ur, ui, fr, fi);
                        ui = cmul_im(ur, ui, fr, fi);
                        ur = nr;
                    } else {
                        const float64x2_t nr = cmul_re(lr, li, fr, fi);
                        li = cmul_im(lr, li, fr, fi);
                        lr = nr;
                    }
                    break;
                }
            }
        }
        vst1q_f64(ia + k, vaddq_f64(vmulq_f64(ur, ur), vmulq_f64(ui, ui)));
        vst1q_f64(ib + k, vaddq_f64(vmulq_f64(lr, lr), vmulq_f64(li, li)));
    }
    if (k < end) {
        propagate_scalar(ops, e0, k, end, ia, ib);
    }
}

void correlate_neon(const double* ia, const double* ib, double denom, double* g2, std::size_t count) {
    const float64x2_t d = vdupq_n_f64(denom);
    std::size_t k = 0;
    for (; k + 2 <= count; k += 2) {
        vst1q_f64(g2 + k, vdivq_f64(vmulq_f64(vld1q_f64(ia + k), vld1q_f64(ib + k)), d));
    }
    correlate_scalar(ia + k, ib + k, denom, g2 + k, count - k);
}

}  // namespace ccdmzi::kernels::detail
