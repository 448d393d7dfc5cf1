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

#include "ccdmzi/noise.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "ccdmzi/analysis.hpp"
#include "ccdmzi/errors.hpp"
#include "ccdmzi/kernels.hpp"
#include "ccdmzi/rng.hpp"

namespace ccdmzi {
namespace {

// Trials are reduced in fixed blocks so the floating-point reduction tree is
// independent of the worker count.
constexpr std::uint64_t kTrialsPerBlock = 32;
constexpr double kZ95 = 1.959963984540054;

struct Moments {
    std::uint64_t count = 0;
    std::vector<double> mean_a;
    std::vector<double> mean_b;
    std::vector<double> mean_g2;
    std::vector<double> m2_g2;

    void reset(std::size_t samples) {
        count = 0;
        mean_a.assign(samples, 0.0);
        mean_b.assign(samples, 0.0);
        mean_g2.assign(samples, 0.0);
        m2_g2.assign(samples, 0.0);
    }

    // Welford update.
    void add(const std::vector<double>& ia, const std::vector<double>& ib, const std::vector<double>& g2) {
        ++count;
        const double c = static_cast<double>(count);
        for (std::size_t k = 0; k < ia.size(); ++k) {
            mean_a[k] += (ia[k] - mean_a[k]) / c;
            mean_b[k] += (ib[k] - mean_b[k]) / c;
            const double d = g2[k] - mean_g2[k];
            mean_g2[k] += d / c;
            m2_g2[k] += d * (g2[k] - mean_g2[k]);
        }
    }

    // Chan et al. pairwise combination.
    void merge(const Moments& other) {
        if (other.count == 0) {
            return;
        }
        if (count == 0) {
            *this = other;
            return;
        }
        const double na = static_cast<double>(count);
        const double nb = static_cast<double>(other.count);
        const double n = na + nb;
        for (std::size_t k = 0; k < mean_a.size(); ++k) {
            mean_a[k] += (other.mean_a[k] - mean_a[k]) * nb / n;
            mean_b[k] += (other.mean_b[k] - mean_b[k]) * nb / n;
            const double delta = other.mean_g2[k] - mean_g2[k];
            mean_g2[k] += delta * nb / n;
            m2_g2[k] += other.m2_g2[k] + delta * delta * na * nb / n;
        }
        count += other.count;
    }
};

struct Scratch {
    std::vector<double> ia;
    std::vector<double> ib;
    std::vector<double> g2;
};

void run_trial(const SweepPlan& plan, Complex e0, const ChainConfig& cfg, const NoiseConfig& noise,
               std::uint64_t trial, Scratch& s) {
    const std::vector<double> jitter = trial_jitter(cfg, noise, trial);
    plan.run(e0, jitter, s.ia.data(), s.ib.data());
    const double ma = mean(s.ia);
    const double mb = mean(s.ib);
    if (!(ma > 0.0) || !(mb > 0.0)) {
        throw NoModulationError("an output port is dark over the whole window");
    }
    kernels::correlate(s.ia.data(), s.ib.data(), ma * mb, s.g2.data(), s.g2.size());
}

}  // namespace

void NoiseConfig::validate() const {
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) {
        throw ValidationError("noise: sigma must be finite and >= 0");
    }
    if (trials < 1) {
        throw ValidationError("noise: trials must be >= 1");
    }
    if (!(dark_threshold > 0.0 && dark_threshold < 1.0)) {
        throw ValidationError("noise: dark-port threshold must lie in (0, 1)");
    }
}

std::string_view to_string(JitterMode mode) {
    return mode == JitterMode::CorrelatedPerBlock ? "correlated" : "independent";
}

JitterMode parse_jitter_mode(std::string_view text) {
    if (text == "correlated" || text == "correlated-per-block") {
        return JitterMode::CorrelatedPerBlock;
    }
    if (text == "independent" || text == "independent-per-shifter") {
        return JitterMode::IndependentPerShifter;
    }
    throw ValidationError("unknown jitter mode '" + std::string(text) + "'");
}

std::vector<double> trial_jitter(const ChainConfig& cfg, const NoiseConfig& noise, std::uint64_t trial) {
    const std::size_t slots = noise.mode == JitterMode::CorrelatedPerBlock ? cfg.n : 2 * std::size_t{cfg.n};
    SplitMix64 rng = SplitMix64::for_trial(noise.seed, trial);
    std::vector<double> jitter(slots);
    for (double& j : jitter) {
        j = noise.sigma * rng.normal();
    }
    return jitter;
}

void trial_intensities(const ChainConfig& cfg, const NoiseConfig& noise, const PhaseGrid& grid,
                       std::uint64_t trial, std::vector<double>& ia, std::vector<double>& ib) {
    cfg.validate();
    noise.validate();
    const SweepPlan plan(chain_program(cfg, noise.mode), grid);
    ia.resize(grid.samples);
    ib.resize(grid.samples);
    plan.run(cfg.input_amplitude, trial_jitter(cfg, noise, trial), ia.data(), ib.data());
}

NoisyTrace run_noise_ensemble(const ChainConfig& cfg, const NoiseConfig& noise, std::size_t samples, double window,
                              unsigned threads) {
    validate_chain_sweep(cfg, samples, window);
    noise.validate();
    const PhaseGrid grid{0.0, window, samples};
    const SweepPlan plan(chain_program(cfg, noise.mode), grid);

    if (threads == 0) {
        threads = std::max(1U, std::thread::hardware_concurrency());
    }
    const std::uint64_t blocks = (noise.trials + kTrialsPerBlock - 1) / kTrialsPerBlock;
    // Blocks are computed a wave at a time to bound memory, then merged in
    // block order.
    const std::uint64_t wave = std::max<std::uint64_t>(64, 4ULL * threads);
    std::vector<Moments> partial(static_cast<std::size_t>(std::min(wave, blocks)));
    Moments total;
    total.reset(samples);

    for (std::uint64_t first = 0; first < blocks; first += wave) {
        const std::uint64_t count = std::min(wave, blocks - first);
        std::atomic<std::uint64_t> next{0};
        std::exception_ptr failure;
        std::atomic<bool> failed{false};
        auto worker = [&]() {
            Scratch s{std::vector<double>(samples), std::vector<double>(samples), std::vector<double>(samples)};
            try {
                for (std::uint64_t i = next.fetch_add(1); i < count && !failed; i = next.fetch_add(1)) {
                    Moments& m = partial[static_cast<std::size_t>(i)];
                    m.reset(samples);
                    const std::uint64_t begin = (first + i) * kTrialsPerBlock;
                    const std::uint64_t end = std::min(noise.trials, begin + kTrialsPerBlock);
                    for (std::uint64_t t = begin; t < end; ++t) {
                        run_trial(plan, cfg.input_amplitude, cfg, noise, t, s);
                        m.add(s.ia, s.ib, s.g2);
                    }
                }
            } catch (...) {
                if (!failed.exchange(true)) {
                    failure = std::current_exception();
                }
            }
        };
        const unsigned spawn = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
        std::vector<std::thread> pool;
        for (unsigned w = 1; w < spawn; ++w) {
            pool.emplace_back(worker);
        }
        worker();
        for (std::thread& t : pool) {
            t.join();
        }
        if (failure) {
            std::rethrow_exception(failure);
        }
        for (std::uint64_t i = 0; i < count; ++i) {
            total.merge(partial[static_cast<std::size_t>(i)]);
        }
    }

    NoisyTrace out;
    out.phi = grid.points();
    out.mean_i_a = std::move(total.mean_a);
    out.mean_i_b = std::move(total.mean_b);
    out.mean_g2 = std::move(total.mean_g2);
    out.ci95_g2.assign(samples, 0.0);
    const double n = static_cast<double>(noise.trials);
    if (noise.trials > 1) {
        for (std::size_t k = 0; k < samples; ++k) {
            const double variance = std::max(0.0, total.m2_g2[k]) / (n - 1.0);
            out.ci95_g2[k] = kZ95 * std::sqrt(variance / n);
        }
    }
    const auto [lo, hi] = std::minmax_element(out.mean_g2.begin(), out.mean_g2.end());
    out.visibility = visibility(out.mean_g2);
    const double denom = *hi + *lo;
    out.visibility_ci95 =
        denom > 0.0 ? (out.ci95_g2[static_cast<std::size_t>(hi - out.mean_g2.begin())] +
                       out.ci95_g2[static_cast<std::size_t>(lo - out.mean_g2.begin())]) /
                          denom
                    : 0.0;
    out.window = window;
    out.trials = noise.trials;
    return out;
}

ErrorRate anticorrelation_error_rate(const ChainConfig& cfg, const NoiseConfig& noise, double basis_phi) {
    cfg.validate();
    noise.validate();
    const double period = kPi / (2.0 * cfg.n);
    const double k = std::round(basis_phi / period);
    if (!std::isfinite(basis_phi) || std::abs(basis_phi - k * period) > 1e-9) {
        throw ValidationError("basis phase is not a g2 zero k pi/(2n)");
    }
    const SweepPlan plan(chain_program(cfg, noise.mode), PhaseGrid{basis_phi, 1.0, 1});

    double ia = 0.0;
    double ib = 0.0;
    plan.run(cfg.input_amplitude, {}, &ia, &ib);
    const bool lower_dark = ib <= ia;

    ErrorRate r;
    r.trials = noise.trials;
    for (std::uint64_t t = 0; t < noise.trials; ++t) {
        plan.run(cfg.input_amplitude, trial_jitter(cfg, noise, t), &ia, &ib);
        const double dark = lower_dark ? ib : ia;
        if (dark > noise.dark_threshold * (ia + ib)) {
            ++r.errors;
        }
    }
    const double n = static_cast<double>(r.trials);
    r.rate = static_cast<double>(r.errors) / n;
    r.ci95 = kZ95 * std::sqrt(r.rate * (1.0 - r.rate) / n);
    return r;
}

}  // namespace ccdmzi
