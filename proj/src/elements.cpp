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

#include "ccdmzi/elements.hpp"

#include <cmath>
#include <string>

#include "ccdmzi/errors.hpp"

namespace ccdmzi {
namespace {

constexpr Complex kI{0.0, 1.0};

Complex unit_phasor(double phase) { return {std::cos(phase), std::sin(phase)}; }

}  // namespace

void ChainConfig::validate() const {
    if (n < 1) {
        throw ValidationError("chain: n must be >= 1");
    }
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw ValidationError("chain: eta must lie in (0, 1], got " + std::to_string(eta));
    }
    if (!(std::abs(input_amplitude) > 0.0) || !std::isfinite(std::abs(input_amplitude))) {
        throw ValidationError("chain: input amplitude must be finite and nonzero");
    }
    if (!(lambda0 > 0.0) || !std::isfinite(lambda0)) {
        throw ValidationError("chain: lambda0 must be positive");
    }
}

double ChainConfig::loss_amplitude() const { return std::pow(eta, 2.0 * (static_cast<double>(n) - 1.0)); }

double MagicPhase::value() const {
    if (order < 1 || (sign != 1 && sign != -1)) {
        throw ValidationError("magic phase: order must be >= 1 and sign +-1");
    }
    return sign * (static_cast<double>(order) - 0.5) * kPi;
}

TransferMatrix beam_splitter() {
    const double r = 1.0 / std::sqrt(2.0);
    return {Complex{r, 0.0}, Complex{0.0, r}, Complex{0.0, r}, Complex{r, 0.0}};
}

TransferMatrix phase_lower(double phi) { return TransferMatrix::diagonal(1.0, unit_phasor(phi)); }

TransferMatrix phase_upper(double phi) { return TransferMatrix::diagonal(unit_phasor(phi), 1.0); }

TransferMatrix loss(double t) {
    if (!(t > 0.0 && t <= 1.0)) {
        throw ValidationError("loss: transmission must lie in (0, 1], got " + std::to_string(t));
    }
    return TransferMatrix::diagonal(t, t);
}

TransferMatrix d_block(double phi) {
    const Complex e = unit_phasor(phi);
    return {0.5 * (1.0 - e), 0.5 * kI * (1.0 + e), 0.5 * kI * (1.0 + e), 0.5 * (e - 1.0)};
}

TransferMatrix d_prime_block(double phi) {
    const Complex e = unit_phasor(phi);
    return {0.5 * (e - 1.0), 0.5 * kI * (e + 1.0), 0.5 * kI * (e + 1.0), 0.5 * (1.0 - e)};
}

TransferMatrix ccd_block(double phi) {
    const Complex e2 = unit_phasor(2.0 * phi);
    return {-0.5 * (1.0 + e2), -0.5 * kI * (1.0 - e2), 0.5 * kI * (1.0 - e2), -0.5 * (1.0 + e2)};
}

TransferMatrix chain_closed_form(const ChainConfig& cfg, double phi) {
    cfg.validate();
    const double sign = (cfg.n % 2 == 0) ? 1.0 : -1.0;
    const double pre = 0.5 * sign * cfg.loss_amplitude();
    const Complex e = unit_phasor(2.0 * static_cast<double>(cfg.n) * phi);
    return {pre * (1.0 + e), pre * kI * (1.0 - e), -pre * kI * (1.0 - e), pre * (1.0 + e)};
}

FieldPair chain_output(const ChainConfig& cfg, double phi) {
    cfg.validate();
    const double sign = (cfg.n % 2 == 0) ? 1.0 : -1.0;
    const double amp = cfg.loss_amplitude();
    const Complex e = unit_phasor(2.0 * static_cast<double>(cfg.n) * phi);
    const Complex half_e0 = 0.5 * cfg.input_amplitude;
    return {half_e0 * sign * amp * (1.0 + e), kI * half_e0 * (-sign) * amp * (1.0 - e)};
}

TransferMatrix chain_product(const ChainConfig& cfg, double phi) {
    cfg.validate();
    const TransferMatrix bs = beam_splitter();
    const TransferMatrix d = bs * phase_lower(phi) * bs;
    const TransferMatrix dp = bs * phase_upper(phi) * bs;
    const TransferMatrix connection = loss(cfg.eta) * loss(cfg.eta);
    TransferMatrix m = TransferMatrix::identity();
    for (std::uint32_t block = 0; block < cfg.n; ++block) {
        if (block > 0) {
            m = connection * m;
        }
        m = dp * (d * m);
    }
    return m;
}

FieldPair bs_anticorrelation(double psi, Complex e0) {
    const Complex port = e0 / std::sqrt(2.0);
    return apply(beam_splitter(), FieldPair{port, port * unit_phasor(psi)});
}

}  // namespace ccdmzi
