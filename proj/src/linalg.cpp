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

#include "ccdmzi/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "ccdmzi/errors.hpp"

namespace ccdmzi {

TransferMatrix TransferMatrix::adjoint() const {
    return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)};
}

TransferMatrix mat_mul(const TransferMatrix& a, const TransferMatrix& b) {
    return {
        a.a11 * b.a11 + a.a12 * b.a21,
        a.a11 * b.a12 + a.a12 * b.a22,
        a.a21 * b.a11 + a.a22 * b.a21,
        a.a21 * b.a12 + a.a22 * b.a22,
    };
}

TransferMatrix mat_pow(const TransferMatrix& m, std::uint64_t n) {
    TransferMatrix result = TransferMatrix::identity();
    TransferMatrix base = m;
    bool first = true;
    while (n > 0) {
        if (n & 1U) {
            result = first ? base : mat_mul(result, base);
            first = false;
        }
        n >>= 1U;
        if (n > 0) {
            base = mat_mul(base, base);
        }
    }
    return result;
}

FieldPair apply(const TransferMatrix& m, const FieldPair& v) {
    return {m.a11 * v.upper + m.a12 * v.lower, m.a21 * v.upper + m.a22 * v.lower};
}

TransferMatrix scale(const TransferMatrix& m, Complex s) {
    return {s * m.a11, s * m.a12, s * m.a21, s * m.a22};
}

double max_entry_diff(const TransferMatrix& a, const TransferMatrix& b) {
    return std::max({std::abs(a.a11 - b.a11), std::abs(a.a12 - b.a12), std::abs(a.a21 - b.a21),
                     std::abs(a.a22 - b.a22)});
}

bool is_unitary(const TransferMatrix& m, double tol) {
    if (!(tol > 0.0)) {
        throw ValidationError("is_unitary: tolerance must be positive");
    }
    return max_entry_diff(mat_mul(m.adjoint(), m), TransferMatrix::identity()) < tol;
}

}  // namespace ccdmzi
