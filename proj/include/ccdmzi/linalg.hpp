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

#include <complex>
#include <cstdint>

namespace ccdmzi {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

inline double intensity(Complex e) { return std::norm(e); }

/// Two-port field amplitudes. `upper` is the first row of every transfer
/// matrix, `lower` the second.
struct FieldPair {
    Complex upper;
    Complex lower;

    double upper_intensity() const { return intensity(upper); }
    double lower_intensity() const { return intensity(lower); }
    double total_intensity() const { return intensity(upper) + intensity(lower); }

    friend bool operator==(const FieldPair&, const FieldPair&) = default;
};

/// 2x2 complex transfer matrix [a11 a12; a21 a22] acting on column
/// vectors [upper; lower].
struct TransferMatrix {
    Complex a11;
    Complex a12;
    Complex a21;
    Complex a22;

    static TransferMatrix identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static TransferMatrix diagonal(Complex d1, Complex d2) { return {d1, 0.0, 0.0, d2}; }

    TransferMatrix adjoint() const;
    Complex determinant() const { return a11 * a22 - a12 * a21; }

    friend bool operator==(const TransferMatrix&, const TransferMatrix&) = default;
};

TransferMatrix mat_mul(const TransferMatrix& a, const TransferMatrix& b);

/// M^n by binary exponentiation; n = 0 gives the identity.
TransferMatrix mat_pow(const TransferMatrix& m, std::uint64_t n);

FieldPair apply(const TransferMatrix& m, const FieldPair& v);

TransferMatrix scale(const TransferMatrix& m, Complex s);

/// Largest entrywise complex modulus of a - b.
double max_entry_diff(const TransferMatrix& a, const TransferMatrix& b);

/// True iff every entry of M^dagger M - I has modulus below tol.
bool is_unitary(const TransferMatrix& m, double tol);

inline TransferMatrix operator*(const TransferMatrix& a, const TransferMatrix& b) { return mat_mul(a, b); }
inline FieldPair operator*(const TransferMatrix& m, const FieldPair& v) { return apply(m, v); }

}  // namespace ccdmzi
