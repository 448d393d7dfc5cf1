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

#include "kernels_internal.hpp"

namespace ccdmzi::kernels {

KernelOp KernelOp::fixed(const TransferMatrix& t) {
    KernelOp op;
    op.kind = Kind::Fixed;
    const Complex entries[4] = {t.a11, t.a12, t.a21, t.a22};
    for (int i = 0; i < 4; ++i) {
        op.m[2 * i] = entries[i].real();
        op.m[2 * i + 1] = entries[i].imag();
    }
    return op;
}

KernelOp KernelOp::scale(double s) {
    KernelOp op;
    op.kind = Kind::Scale;
    op.m[0] = s;
    return op;
}

KernelOp KernelOp::phase(Kind arm, const double* table_re, const double* table_im, Complex rotation) {
    KernelOp op;
    op.kind = arm;
    op.table_re = table_re;
    op.table_im = table_im;
    op.rot_re = rotation.real();
    op.rot_im = rotation.imag();
    return op;
}

namespace detail {

// Reference kernel. The SIMD variants mirror this operation order exactly.
void propagate_scalar(std::span<const KernelOp> ops, Complex e0, std::size_t begin, std::size_t end, double* ia,
                      double* ib) {
    for (std::size_t k = begin; k < end; ++k) {
        double ur = e0.real();
        double ui = e0.imag();
        double lr = 0.0;
        double li = 0.0;
        for (const KernelOp& op : ops) {
            switch (op.kind) {
                case KernelOp::Kind::Fixed: {
                    const double* m = op.m;
                    const double nur = (m[0] * ur - m[1] * ui) + (m[2] * lr - m[3] * li);
                    const double nui = (m[0] * ui + m[1] * ur) + (m[2] * li + m[3] * lr);
                    const double nlr = (m[4] * ur - m[5] * ui) + (m[6] * lr - m[7] * li);
                    const double nli = (m[4] * ui + m[5] * ur) + (m[6] * li + m[7] * lr);
                    ur = nur;
                    ui = nui;
                    lr = nlr;
                    li = nli;
                    break;
                }
                case KernelOp::Kind::Scale:
                    ur *= op.m[0];
                    ui *= op.m[0];
                    lr *= op.m[0];
                    li *= op.m[0];
                    break;
                case KernelOp::Kind::PhaseUpper:
                case KernelOp::Kind::PhaseLower: {
                    const double tr = op.table_re[k];
                    const double ti = op.table_im[k];
                    const double fr = tr * op.rot_re - ti * op.rot_im;
                    const double fi = tr * op.rot_im + ti * op.rot_re;
                    double& xr = op.kind == KernelOp::Kind::PhaseUpper ? ur : lr;
                    double& xi = op.kind == KernelOp::Kind::PhaseUpper ? ui : li;
                    const double nr = xr * fr - xi * fi;
                    const double ni = xr * fi + xi * fr;
                    xr = nr;
                    xi = ni;
                    break;
                }
            }
        }
        ia[k] = ur * ur + ui * ui;
        ib[k] = lr * lr + li * li;
    }
}

void correlate_scalar(const double* ia, const double* ib, double denom, double* g2, std::size_t count) {
    for (std::size_t k = 0; k < count; ++k) {
        g2[k] = (ia[k] * ib[k]) / denom;
    }
}

}  // namespace detail
}  // namespace ccdmzi::kernels
