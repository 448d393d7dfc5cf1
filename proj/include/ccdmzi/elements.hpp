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

#include <cstdint>

#include "ccdmzi/linalg.hpp"

namespace ccdmzi {

/// Parameters of a serial chain of n cross-coupled double MZI blocks.
struct ChainConfig {
    std::uint32_t n = 1;                  // CCD blocks
    double eta = 1.0;                     // amplitude transmission per pass of a connection
    Complex input_amplitude = 1.0;        // E0, fed into the upper port
    double lambda0 = 1.0;                 // carrier wavelength, any length unit

    /// Throws ValidationError unless n >= 1, 0 < eta <= 1, |E0| > 0, lambda0 > 0.
    void validate() const;

    double input_intensity() const { return intensity(input_amplitude); }
    std::uint32_t mzi_block_count() const { return 2 * n; }
    std::uint32_t equivalent_photon_number() const { return 4 * n; }

    /// Amplitude factor eta^(2(n-1)) accumulated over the n-1 connections.
    double loss_amplitude() const;
};

/// psi_n = sign * (order - 1/2) * pi, the BS input phase giving a dark port.
struct MagicPhase {
    std::uint32_t order = 1;
    int sign = 1;

    double value() const;
};

TransferMatrix beam_splitter();

/// diag(1, e^{i phi}).
TransferMatrix phase_lower(double phi);

/// diag(e^{i phi}, 1).
TransferMatrix phase_upper(double phi);

/// t * I; requires 0 < t <= 1.
TransferMatrix loss(double t);

/// BS * phase_lower(phi) * BS in closed form.
TransferMatrix d_block(double phi);

/// BS * phase_upper(phi) * BS in closed form.
TransferMatrix d_prime_block(double phi);

/// d_prime_block(phi) * d_block(phi) in closed form.
TransferMatrix ccd_block(double phi);

/// Closed-form n-block chain matrix including the (-1)^n sign and the
/// eta^(2(n-1)) loss prefactor.
TransferMatrix chain_closed_form(const ChainConfig& cfg, double phi);

/// Output fields of the chain for input [E0; 0], evaluated from the
/// closed-form amplitudes.
FieldPair chain_output(const ChainConfig& cfg, double phi);

/// Element-by-element product: CCD blocks separated by loss(eta)^2 at each
/// connection. Slow reference route for chain_closed_form.
TransferMatrix chain_product(const ChainConfig& cfg, double phi);

/// Beam-splitter picture of anticorrelation: E0/sqrt2 and (E0/sqrt2) e^{i psi}
/// enter the two BS ports. The upper output intensity is I0 (1 - sin psi) / 2.
FieldPair bs_anticorrelation(double psi, Complex e0);

}  // namespace ccdmzi
