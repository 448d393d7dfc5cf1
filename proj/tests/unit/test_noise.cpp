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

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <sstream>

#include "ccdmzi/analysis.hpp"
#include "ccdmzi/errors.hpp"
#include "ccdmzi/noise.hpp"
#include "ccdmzi/rng.hpp"
#include "ccdmzi/trace_io.hpp"
#include "oracles.hpp"

using namespace ccdmzi;

namespace {

ChainConfig chain(std::uint32_t n, double eta = 1.0) {
    ChainConfig cfg;
    cfg.n = n;
    cfg.eta = eta;
    return cfg;
}

NoiseConfig noise(double sigma, std::uint64_t trials, std::uint64_t seed = 1,
                  JitterMode mode = JitterMode::CorrelatedPerBlock) {
    NoiseConfig c;
    c.sigma = sigma;
    c.trials = trials;
    c.seed = seed;
    c.mode = mode;
    return c;
}

bool bit_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

std::string csv_of(const NoisyTrace& t) {
    std::ostringstream out;
    write_noisy_csv(out, t);
    return out.str();
}

}  // namespace

TEST_CASE("SplitMix64 reference stream") {
    // First outputs of the canonical SplitMix64 seeded with 0.
    SplitMix64 rng(0);
    CHECK(rng.next() == 0xE220A8397B1DCDAFULL);
    CHECK(rng.next() == 0x6E789E6AA1B965F4ULL);
    CHECK(rng.next() == 0x06C45D188009454FULL);
}

TEST_CASE("per-trial streams are reproducible and distinct") {
    SplitMix64 a = SplitMix64::for_trial(42, 7);
    SplitMix64 b = SplitMix64::for_trial(42, 7);
    SplitMix64 c = SplitMix64::for_trial(42, 8);
    SplitMix64 d = SplitMix64::for_trial(43, 7);
    const double x = a.normal();
    CHECK(x == b.normal());
    CHECK(x != c.normal());
    CHECK(x != d.normal());
}

TEST_CASE("normal draws have unit variance") {
    SplitMix64 rng(2026);
    const int count = 200000;
    double sum = 0.0;
    double sq = 0.0;
    for (int i = 0; i < count; ++i) {
        const double z = rng.normal();
        sum += z;
        sq += z * z;
    }
    const double m = sum / count;
    CHECK(std::abs(m) < 5.0 / std::sqrt(count));
    CHECK(std::abs(sq / count - m * m - 1.0) < 0.02);
}

TEST_CASE("trial jitter slot counts follow the mode") {
    CHECK(trial_jitter(chain(3), noise(0.1, 1), 0).size() == 3);
    CHECK(trial_jitter(chain(3), noise(0.1, 1, 1, JitterMode::IndependentPerShifter), 0).size() == 6);
    for (double j : trial_jitter(chain(4), noise(0.0, 1), 5)) {
        CHECK(j == 0.0);
    }
}

TEST_CASE("sigma = 0 reproduces the deterministic trace bit for bit") {
    for (JitterMode mode : {JitterMode::CorrelatedPerBlock, JitterMode::IndependentPerShifter}) {
        for (std::uint32_t n : {1U, 3U}) {
            for (double eta : {1.0, 0.8}) {
                const CorrelationTrace det = g2_trace(chain(n, eta), 512);
                const NoisyTrace t = run_noise_ensemble(chain(n, eta), noise(0.0, 37, 9, mode), 512);
                CHECK(bit_equal(t.phi, det.phi));
                CHECK(bit_equal(t.mean_i_a, det.i_a));
                CHECK(bit_equal(t.mean_i_b, det.i_b));
                CHECK(bit_equal(t.mean_g2, det.g2));
                for (double c : t.ci95_g2) {
                    CHECK(c == 0.0);
                }
                CHECK(t.visibility == visibility(det.g2));
                CHECK(t.trials == 37);
            }
        }
    }
}

TEST_CASE("results do not depend on the thread count") {
    const NoiseConfig cfg = noise(0.3, 700, 7, JitterMode::IndependentPerShifter);
    const std::string ref = csv_of(run_noise_ensemble(chain(2, 0.9), cfg, 256, 2.0 * kPi, 1));
    for (unsigned threads : {2U, 3U, 4U, 8U, 0U}) {
        CHECK(csv_of(run_noise_ensemble(chain(2, 0.9), cfg, 256, 2.0 * kPi, threads)) == ref);
    }
    CHECK(csv_of(run_noise_ensemble(chain(2, 0.9), noise(0.3, 700, 8, JitterMode::IndependentPerShifter), 256)) !=
          ref);
}

TEST_CASE("ensemble means agree with a direct per-trial average") {
    const ChainConfig c = chain(2);
    const NoiseConfig nc = noise(0.4, 50, 3);
    const NoisyTrace t = run_noise_ensemble(c, nc, 64);
    const PhaseGrid grid{0.0, 2.0 * kPi, 64};
    std::vector<double> sum_a(64, 0.0);
    std::vector<double> ia, ib;
    for (std::uint64_t trial = 0; trial < nc.trials; ++trial) {
        trial_intensities(c, nc, grid, trial, ia, ib);
        for (std::size_t k = 0; k < 64; ++k) {
            sum_a[k] += ia[k];
        }
    }
    for (std::size_t k = 0; k < 64; ++k) {
        CHECK(t.mean_i_a[k] == doctest::Approx(sum_a[k] / 50.0).epsilon(1e-12));
    }
}

TEST_CASE("per-trial fields match the oracle chain with block jitter") {
    const ChainConfig c = chain(3, 0.7);
    const NoiseConfig nc = noise(0.5, 4, 11);
    const PhaseGrid grid{0.0, 2.0 * kPi, 48};
    std::vector<double> ia, ib;
    for (std::uint64_t trial = 0; trial < nc.trials; ++trial) {
        const std::vector<double> jitter = trial_jitter(c, nc, trial);
        trial_intensities(c, nc, grid, trial, ia, ib);
        for (std::size_t k = 0; k < grid.samples; ++k) {
            const oracle::M2 m = oracle::chain(3, 0.7, grid.at(k), jitter);
            REQUIRE(ia[k] == doctest::Approx(std::norm(m[0][0])).epsilon(1e-12));
            REQUIRE(ib[k] == doctest::Approx(std::norm(m[1][0])).epsilon(1e-12));
        }
    }
}

TEST_CASE("jitter is lossless: per-trial conservation") {
    for (JitterMode mode : {JitterMode::CorrelatedPerBlock, JitterMode::IndependentPerShifter}) {
        for (double eta : {1.0, 0.9}) {
            const ChainConfig c = chain(4, eta);
            const NoiseConfig nc = noise(1.0, 200, 5, mode);
            const PhaseGrid grid{0.0, 2.0 * kPi, 128};
            const double expected = std::pow(eta, 12.0);
            std::vector<double> ia, ib;
            for (std::uint64_t trial = 0; trial < nc.trials; ++trial) {
                trial_intensities(c, nc, grid, trial, ia, ib);
                for (std::size_t k = 0; k < grid.samples; ++k) {
                    REQUIRE(std::abs(ia[k] + ib[k] - expected) < 1e-11);
                }
            }
        }
    }
}

TEST_CASE("fully randomized phase washes out the fringes") {
    const NoisyTrace t = run_noise_ensemble(chain(1), noise(2.0 * kPi, 10000, 1), 256);
    CHECK(t.visibility < 0.1);
}

TEST_CASE("deeper chains are more sensitive to jitter") {
    const NoisyTrace one = run_noise_ensemble(chain(1), noise(0.05, 10000, 2), 256);
    const NoisyTrace four = run_noise_ensemble(chain(4), noise(0.05, 10000, 2), 256);
    CHECK(four.visibility < one.visibility);
}

TEST_CASE("visibility follows the Gaussian dephasing prediction") {
    // Correlated mode: each block's shared jitter delta enters g2 as cos(4 (phi + delta)),
    // so averaging over n blocks gives a fringe contrast of exp(-8 n sigma^2).
    for (std::uint32_t n : {1U, 2U}) {
        for (double sigma : {0.1, 0.2}) {
            const NoisyTrace t = run_noise_ensemble(chain(n), noise(sigma, 10000, 4), 256);
            const double predicted = std::exp(-8.0 * n * sigma * sigma);
            CHECK(std::abs(t.visibility - predicted) < 3.0 * t.visibility_ci95 + 0.01);
        }
    }
}

TEST_CASE("visibility is non-increasing along the sigma ladder") {
    double previous = 2.0;
    double previous_ci = 0.0;
    for (double sigma : {0.0, 0.1, 0.3, 1.0}) {
        const NoisyTrace t = run_noise_ensemble(chain(1), noise(sigma, 10000, 17), 256);
        CHECK(t.visibility_ci95 >= 0.0);
        CHECK(t.visibility <= previous + previous_ci + t.visibility_ci95);
        previous = t.visibility;
        previous_ci = t.visibility_ci95;
    }
}

TEST_CASE("anticorrelation error rate") {
    CHECK(anticorrelation_error_rate(chain(2), noise(0.0, 1000), 0.0).rate == 0.0);
    CHECK(anticorrelation_error_rate(chain(2), noise(0.0, 1000), kPi / 4.0).rate == 0.0);
    const ErrorRate scrambled = anticorrelation_error_rate(chain(1), noise(kPi, 10000, 3), kPi / 2.0);
    CHECK(scrambled.rate > 0.5);
    CHECK(scrambled.trials == 10000);
    CHECK(scrambled.errors == static_cast<std::uint64_t>(std::llround(scrambled.rate * 10000)));

    double previous = -1.0;
    double previous_ci = 0.0;
    for (double sigma : {0.0, 0.1, 0.3, 1.0}) {
        const ErrorRate r = anticorrelation_error_rate(chain(1), noise(sigma, 10000, 21), 0.0);
        CHECK(r.rate >= 0.0);
        CHECK(r.rate <= 1.0);
        CHECK(r.rate + r.ci95 >= previous - previous_ci);
        previous = r.rate;
        previous_ci = r.ci95;
    }

    CHECK_THROWS_AS(anticorrelation_error_rate(chain(1), noise(0.1, 10), 0.3), ValidationError);
}

TEST_CASE("noise configuration validation") {
    CHECK_THROWS_AS(run_noise_ensemble(chain(1), noise(-0.1, 10), 64), ValidationError);
    CHECK_THROWS_AS(run_noise_ensemble(chain(1), noise(0.1, 0), 64), ValidationError);
    CHECK_THROWS_AS(run_noise_ensemble(chain(2), noise(0.1, 10), 16), ValidationError);
    CHECK(parse_jitter_mode("independent") == JitterMode::IndependentPerShifter);
    CHECK(parse_jitter_mode(to_string(JitterMode::CorrelatedPerBlock)) == JitterMode::CorrelatedPerBlock);
    CHECK_THROWS_AS(parse_jitter_mode("sometimes"), ValidationError);
}

TEST_CASE("noisy CSV carries the confidence column") {
    const NoisyTrace t = run_noise_ensemble(chain(1), noise(0.2, 100), 64);
    const std::string text = csv_of(t);
    CHECK(text.rfind("phi,i_a,i_b,g2,ci95_g2\n", 0) == 0);
    std::istringstream in(text);
    const CorrelationTrace back = read_trace_csv(in);
    CHECK(back.size() == 64);
    CHECK(analyze(back).inferred_n == 1);
}
