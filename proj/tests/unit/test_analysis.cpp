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

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "ccdmzi/analysis.hpp"
#include "ccdmzi/errors.hpp"
#include "ccdmzi/trace_io.hpp"
#include "oracles.hpp"

using namespace ccdmzi;

namespace {

ChainConfig chain(std::uint32_t n, double eta = 1.0, Complex e0 = 1.0) {
    ChainConfig cfg;
    cfg.n = n;
    cfg.eta = eta;
    cfg.input_amplitude = e0;
    return cfg;
}

double sample_at(const CorrelationTrace& t, double phi) {
    const auto it = std::min_element(t.phi.begin(), t.phi.end(),
                                     [&](double a, double b) { return std::abs(a - phi) < std::abs(b - phi); });
    REQUIRE(std::abs(*it - phi) < 1e-12);
    return t.g2[static_cast<std::size_t>(it - t.phi.begin())];
}

CorrelationTrace bare_mzi_trace(std::size_t samples = 4096) {
    return program_trace(mzi_program(), 1.0, PhaseGrid{0.0, 2.0 * kPi, samples});
}

}  // namespace

TEST_CASE("intensities_n examples") {
    auto [a, b] = intensities_n(chain(1), 0.0);
    CHECK(a == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(std::abs(b) < 1e-15);
    std::tie(a, b) = intensities_n(chain(2), kPi / 8.0);
    CHECK(a == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(b == doctest::Approx(0.5).epsilon(1e-15));
    std::tie(a, b) = intensities_n(chain(1), kPi / 2.0);
    CHECK(std::abs(a) < 1e-15);
    CHECK(b == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("intensities_n matches the propagated chain fields") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-kPi, kPi);
    for (std::uint32_t n : {1U, 2U, 5U, 9U}) {
        for (double eta : {1.0, 0.9, 0.5}) {
            const ChainConfig cfg = chain(n, eta, Complex{0.6, -0.3});
            for (int i = 0; i < 50; ++i) {
                const double phi = u(rng);
                const auto [ia, ib] = intensities_n(cfg, phi);
                const oracle::M2 m = oracle::chain(n, eta, phi);
                const double ra = std::norm(m[0][0] * cfg.input_amplitude);
                const double rb = std::norm(m[1][0] * cfg.input_amplitude);
                REQUIRE(std::abs(ia - ra) < 1e-12);
                REQUIRE(std::abs(ib - rb) < 1e-12);
            }
        }
    }
}

TEST_CASE("g2_first_order examples") {
    CHECK(std::abs(g2_first_order(0.0)) < 1e-16);
    CHECK(g2_first_order(kPi / 2.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g2_first_order(kPi / 4.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("g2_first_order equals the trace construction on a bare D block") {
    const CorrelationTrace t = bare_mzi_trace();
    for (std::size_t k = 0; k < t.size(); ++k) {
        REQUIRE(std::abs(t.g2[k] - g2_first_order(t.phi[k])) < 1e-12);
    }
}

TEST_CASE("g2_trace examples") {
    const CorrelationTrace one = g2_trace(chain(1), 4096);
    CHECK(sample_at(one, kPi / 4.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(sample_at(one, kPi / 2.0)) < 1e-12);
    const CorrelationTrace three = g2_trace(chain(3), 4800);
    CHECK(sample_at(three, kPi / 24.0) == doctest::Approx(0.5).epsilon(1e-9));
}

TEST_CASE("g2_trace preconditions") {
    CHECK_THROWS_AS(g2_trace(chain(2), 31), ValidationError);
    CHECK_NOTHROW(g2_trace(chain(2), 32));
    CHECK_THROWS_AS(g2_trace(chain(1), 4096, 2.0 * kPi + 0.3), ValidationError);
    CHECK_THROWS_AS(g2_trace(chain(1), 4096, kPi / 3.0), ValidationError);
    CHECK_NOTHROW(g2_trace(chain(1), 4096, kPi));
    CHECK_THROWS_AS(g2_trace(chain(1), 4096, -2.0 * kPi), ValidationError);
    CHECK_THROWS_AS(g2_trace(chain(0), 4096), ValidationError);
}

TEST_CASE("lossless trace fidelity, range and zeros for n = 1..10") {
    for (std::uint32_t n = 1; n <= 10; ++n) {
        const CorrelationTrace t = g2_trace(chain(n), 4096);
        REQUIRE(t.size() == 4096);
        t.validate();
        double worst = 0.0;
        for (std::size_t k = 0; k < t.size(); ++k) {
            worst = std::max(worst, std::abs(t.g2[k] - oracle::g2_closed(n, t.phi[k])));
            REQUIRE(t.g2[k] >= 0.0);
            REQUIRE(t.g2[k] <= 1.0 + 1e-9);
        }
        CHECK(worst < 1e-9);
        // zeros at k pi / (2n): grid index 1024 k / n when 4096 divides evenly
        for (std::size_t k = 0; k < 4 * n; ++k) {
            if (k * 1024 % n == 0) {
                CHECK(std::abs(t.g2[k * 1024 / n]) < 1e-12);
            }
        }
    }
}

TEST_CASE("zeros of g2 on a grid built around the anticorrelation basis") {
    for (std::uint32_t n : {3U, 5U, 7U}) {
        const CorrelationTrace t = g2_trace(chain(n), 64 * 4 * n);
        for (std::size_t j = 0; j < t.size(); j += 64) {
            REQUIRE(std::abs(t.g2[j]) < 1e-12);
        }
    }
}

TEST_CASE("detect_period examples") {
    CHECK(detect_period(g2_trace(chain(1), 4096)) == kPi / 2.0);
    CHECK(detect_period(bare_mzi_trace()) == kPi);
    CorrelationTrace flat = g2_trace(chain(1), 64);
    std::fill(flat.g2.begin(), flat.g2.end(), 0.25);
    CHECK_THROWS_AS(detect_period(flat), NoModulationError);
}

TEST_CASE("detect_period picks the same bin as a direct DFT") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> z(0.0, 0.05);
    for (std::uint32_t n = 1; n <= 6; ++n) {
        CorrelationTrace t = g2_trace(chain(n), 512);
        for (double& g : t.g2) {
            g += z(rng);
        }
        std::vector<double> centered = t.g2;
        const double m = mean(centered);
        for (double& g : centered) {
            g -= m;
        }
        const std::vector<double> mag = oracle::dft_magnitudes(centered);
        const std::size_t kstar = static_cast<std::size_t>(std::max_element(mag.begin() + 1, mag.end()) - mag.begin());
        CHECK(kstar == 4 * n);
        CHECK(detect_period(t) == doctest::Approx(t.window / static_cast<double>(kstar)).epsilon(1e-15));
    }
}

TEST_CASE("period detection and inference recover n for n = 1..10") {
    for (std::uint32_t n = 1; n <= 10; ++n) {
        const CorrelationTrace t = g2_trace(chain(n), 4096 - 4096 % (4 * n));
        const double period = detect_period(t);
        CHECK(period == doctest::Approx(kPi / (2.0 * n)).epsilon(1e-15));
        const AnalysisResult r = analyze(t, 1.0);
        CHECK(r.inferred_n == n);
        CHECK(r.equivalent_photon_number == 4 * n);
        CHECK(r.visibility == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(std::abs(r.lambda_ratio - r.period_phase / (2.0 * kPi)) < 1e-12);
    }
}

TEST_CASE("intensity traces modulate at twice the g2 period") {
    for (std::uint32_t n : {1U, 2U, 4U}) {
        const CorrelationTrace t = g2_trace(chain(n), 2048);
        CorrelationTrace ia = t;
        ia.g2 = t.i_a;
        CorrelationTrace ib = t;
        ib.g2 = t.i_b;
        CHECK(detect_period(ia) == doctest::Approx(2.0 * detect_period(t)).epsilon(1e-15));
        CHECK(detect_period(ib) == doctest::Approx(2.0 * detect_period(t)).epsilon(1e-15));
    }
}

TEST_CASE("normalized g2 is invariant under connection loss") {
    for (std::uint32_t n : {1U, 3U, 6U}) {
        const CorrelationTrace ref = g2_trace(chain(n), 1024);
        for (double eta : {0.5, 0.9}) {
            const CorrelationTrace lossy = g2_trace(chain(n, eta), 1024);
            double worst = 0.0;
            for (std::size_t k = 0; k < ref.size(); ++k) {
                worst = std::max(worst, std::abs(lossy.g2[k] - ref.g2[k]));
            }
            CHECK(worst < 1e-10);
            const double scale = std::pow(eta, 4.0 * (n - 1));
            for (std::size_t k = 0; k < ref.size(); ++k) {
                REQUIRE(std::abs(lossy.i_a[k] + lossy.i_b[k] - scale) < 1e-11);
            }
        }
    }
}

TEST_CASE("de_broglie_wavelength examples") {
    AnalysisResult r = de_broglie_wavelength(kPi / 2.0, 1.0);
    CHECK(r.lambda_cb == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(r.inferred_n == 1);
    CHECK(r.equivalent_photon_number == 4);
    r = de_broglie_wavelength(kPi / 12.0, 1.0);
    CHECK(r.lambda_cb == doctest::Approx(1.0 / 24.0).epsilon(1e-15));
    CHECK(r.inferred_n == 6);
    CHECK(r.equivalent_photon_number == 24);
    r = de_broglie_wavelength(kPi, 800e-9);
    CHECK(r.lambda_ratio == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(r.lambda_cb == doctest::Approx(400e-9).epsilon(1e-15));
    CHECK_THROWS_AS(de_broglie_wavelength(0.0, 1.0), ValidationError);
    CHECK_THROWS_AS(de_broglie_wavelength(2.0 * kPi + 0.1, 1.0), ValidationError);
    CHECK_THROWS_AS(de_broglie_wavelength(2.0 * kPi, 1.0), ValidationError);
    CHECK_THROWS_AS(de_broglie_wavelength(kPi / 2.0, 0.0), ValidationError);
}

TEST_CASE("coherence_budget examples") {
    CHECK(coherence_budget(1e-3).coherence_length_m == doctest::Approx(2.99792458e11).epsilon(1e-12));
    CHECK(coherence_budget(1e-3).coherence_length_km() == doctest::Approx(2.99792458e8).epsilon(1e-12));
    CHECK(coherence_budget(1.0).coherence_length_m == 299792458.0);
    CHECK(coherence_budget(1e6).coherence_length_m == doctest::Approx(299.792458).epsilon(1e-12));
    CHECK_THROWS_AS(coherence_budget(0.0), ValidationError);
    CHECK_THROWS_AS(coherence_budget(-1.0), ValidationError);
}

TEST_CASE("visibility and mean helpers") {
    const std::vector<double> v{0.2, 0.6, 0.4};
    CHECK(visibility(v) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(mean(v) == doctest::Approx(0.4).epsilon(1e-15));
    std::vector<double> cancel{1e16, 1.0, -1e16};
    CHECK(mean(cancel) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("trace validation") {
    CorrelationTrace t = g2_trace(chain(1), 64);
    CHECK_NOTHROW(t.validate());
    CorrelationTrace shorter = t;
    shorter.g2.pop_back();
    CHECK_THROWS_AS(shorter.validate(), ValidationError);
    CorrelationTrace uneven = t;
    uneven.phi[10] += 1e-6;
    CHECK_THROWS_AS(uneven.validate(), ValidationError);
    CorrelationTrace backwards = t;
    std::reverse(backwards.phi.begin(), backwards.phi.end());
    CHECK_THROWS_AS(backwards.validate(), ValidationError);
}

TEST_CASE("normalize_g2 rejects a dark port") {
    CorrelationTrace t = g2_trace(chain(1), 64);
    std::fill(t.i_b.begin(), t.i_b.end(), 0.0);
    CHECK_THROWS_AS(normalize_g2(t), NoModulationError);
}

TEST_CASE("CSV round trip preserves every sample") {
    const CorrelationTrace t = g2_trace(chain(2, 0.9, Complex{0.3, 0.8}), 256);
    std::stringstream buf;
    write_trace_csv(buf, t);
    const std::string text = buf.str();
    CHECK(text.rfind("phi,i_a,i_b,g2\n", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);
    const CorrelationTrace back = read_trace_csv(buf);
    REQUIRE(back.size() == t.size());
    for (std::size_t k = 0; k < t.size(); ++k) {
        REQUIRE(back.phi[k] == doctest::Approx(t.phi[k]).epsilon(1e-15));
        REQUIRE(back.i_a[k] == doctest::Approx(t.i_a[k]).epsilon(1e-15));
        REQUIRE(back.g2[k] == doctest::Approx(t.g2[k]).epsilon(1e-15));
    }
    CHECK(back.window == doctest::Approx(t.window).epsilon(1e-12));
    CHECK(analyze(back).inferred_n == 2);
}

TEST_CASE("malformed CSV input is rejected") {
    const auto reject = [](const std::string& text) {
        std::istringstream in(text);
        CHECK_THROWS_AS(read_trace_csv(in), ValidationError);
    };
    reject("");
    reject("phi,g2\n0,1\n0.1,0\n");
    reject("phi,i_a,i_b,g2\n0,1,0,0\n0.1,1,0\n");
    reject("phi,i_a,i_b,g2\n0,1,0,0\n0.1,x,0,0\n");
    reject("phi,i_a,i_b,g2\n0,1,0,0\n");
    std::istringstream crlf("phi,i_a,i_b,g2\r\n0,1,0,0\r\n0.5,0,1,1\r\n");
    CHECK(read_trace_csv(crlf).size() == 2);
}
