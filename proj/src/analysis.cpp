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

#include "ccdmzi/analysis.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <mutex>

#include "ccdmzi/errors.hpp"
#include "ccdmzi/kernels.hpp"

namespace ccdmzi {
namespace {

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};
struct PlanDestroy {
    void operator()(fftw_plan_s* p) const { fftw_destroy_plan(p); }
};

std::string format_short(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

}  // namespace

void validate_chain_sweep(const ChainConfig& cfg, std::size_t samples, double window) {
    cfg.validate();
    if (samples < 16ULL * cfg.n) {
        throw ValidationError("samples must be >= 16 n");
    }
    if (!(window > 0.0) || !std::isfinite(window)) {
        throw ValidationError("window must be positive");
    }
    const double period = kPi / (2.0 * cfg.n);
    const double ratio = window / period;
    const double whole = std::round(ratio);
    if (whole < 1.0 || std::abs(ratio - whole) > 1e-9 * std::max(1.0, ratio)) {
        throw ValidationError("window must hold a whole number of g2 periods pi/(2n)");
    }
}

void CorrelationTrace::validate() const {
    const std::size_t s = phi.size();
    if (s < 2) {
        throw ValidationError("trace needs at least two samples");
    }
    if (i_a.size() != s || i_b.size() != s || g2.size() != s) {
        throw ValidationError("trace columns differ in length");
    }
    const double step = phi[1] - phi[0];
    if (!(step > 0.0)) {
        throw ValidationError("trace grid must be ascending");
    }
    for (std::size_t k = 1; k < s; ++k) {
        if (std::abs((phi[k] - phi[k - 1]) - step) > 1e-12) {
            throw ValidationError("trace grid is not uniform");
        }
    }
}

double mean(std::span<const double> values) {
    if (values.empty()) {
        throw ValidationError("mean of an empty sequence");
    }
    double sum = 0.0;
    double comp = 0.0;
    for (double v : values) {
        const double t = sum + v;
        comp += std::abs(sum) >= std::abs(v) ? (sum - t) + v : (v - t) + sum;
        sum = t;
    }
    return (sum + comp) / static_cast<double>(values.size());
}

double visibility(std::span<const double> values) {
    if (values.empty()) {
        throw ValidationError("visibility of an empty sequence");
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double denom = *hi + *lo;
    return denom == 0.0 ? 0.0 : (*hi - *lo) / denom;
}

std::pair<double, double> intensities_n(const ChainConfig& cfg, double phi) {
    cfg.validate();
    const double c = std::cos(2.0 * static_cast<double>(cfg.n) * phi);
    const double scale = cfg.input_intensity() * std::pow(cfg.eta, 4.0 * (static_cast<double>(cfg.n) - 1.0));
    return {0.5 * scale * (1.0 + c), 0.5 * scale * (1.0 - c)};
}

double g2_first_order(double phi) { return 0.5 * (1.0 - std::cos(2.0 * phi)); }

void normalize_g2(CorrelationTrace& trace) {
    const double ma = mean(trace.i_a);
    const double mb = mean(trace.i_b);
    if (!(ma > 0.0) || !(mb > 0.0)) {
        throw NoModulationError("an output port is dark over the whole window");
    }
    trace.g2.resize(trace.i_a.size());
    kernels::correlate(trace.i_a.data(), trace.i_b.data(), ma * mb, trace.g2.data(), trace.g2.size());
}

CorrelationTrace program_trace(const Program& program, Complex e0, const PhaseGrid& grid, std::string provenance) {
    if (grid.samples < 2) {
        throw ValidationError("sweep needs at least two samples");
    }
    const SweepPlan plan(program, grid);
    CorrelationTrace trace;
    trace.phi = grid.points();
    trace.i_a.resize(grid.samples);
    trace.i_b.resize(grid.samples);
    plan.run(e0, {}, trace.i_a.data(), trace.i_b.data());
    trace.window = grid.window;
    trace.provenance = std::move(provenance);
    normalize_g2(trace);
    return trace;
}

CorrelationTrace g2_trace(const ChainConfig& cfg, std::size_t samples, double window, double start) {
    validate_chain_sweep(cfg, samples, window);
    const PhaseGrid grid{start, window, samples};
    return program_trace(chain_program(cfg), cfg.input_amplitude, grid,
                         "chain n=" + std::to_string(cfg.n) + " eta=" + format_short(cfg.eta));
}

double detect_period(const CorrelationTrace& trace) {
    trace.validate();
    const std::size_t s = trace.size();
    const double m = mean(trace.g2);

    std::unique_ptr<double, FftwFree> in(static_cast<double*>(fftw_malloc(sizeof(double) * s)));
    std::unique_ptr<fftw_complex, FftwFree> out(
        static_cast<fftw_complex*>(fftw_malloc(sizeof(fftw_complex) * (s / 2 + 1))));
    std::unique_ptr<fftw_plan_s, PlanDestroy> plan;
    {
        std::lock_guard<std::mutex> lock(planner_mutex());
        plan.reset(fftw_plan_dft_r2c_1d(static_cast<int>(s), in.get(), out.get(), FFTW_ESTIMATE));
    }
    for (std::size_t k = 0; k < s; ++k) {
        in.get()[k] = trace.g2[k] - m;
    }
    fftw_execute(plan.get());

    std::vector<double> magnitude(s / 2 + 1, 0.0);
    double peak = 0.0;
    for (std::size_t k = 1; k <= s / 2; ++k) {
        magnitude[k] = std::hypot(out.get()[k][0], out.get()[k][1]);
        peak = std::max(peak, magnitude[k]);
    }
    double dc = 0.0;
    for (double v : trace.g2) {
        dc += v;
    }
    dc = std::abs(dc);
    if (!(peak > 0.0) || peak < 1e-12 * dc) {
        throw NoModulationError();
    }
    std::size_t best = 1;
    while (magnitude[best] < peak * (1.0 - 1e-9)) {
        ++best;
    }
    if (best < 2) {
        throw ValidationError("trace must cover at least two full periods");
    }
    return trace.window / static_cast<double>(best);
}

AnalysisResult de_broglie_wavelength(double period_phase, double lambda0, double visibility) {
    if (!(period_phase > 0.0 && period_phase <= 2.0 * kPi)) {
        throw ValidationError("period must lie in (0, 2 pi]");
    }
    if (!(lambda0 > 0.0)) {
        throw ValidationError("lambda0 must be positive");
    }
    const long long n = std::llround(kPi / (2.0 * period_phase));
    if (n < 1) {
        throw ValidationError("inferred block count below 1");
    }
    AnalysisResult r;
    r.period_phase = period_phase;
    r.visibility = visibility;
    r.lambda_ratio = period_phase / (2.0 * kPi);
    r.lambda_cb = r.lambda_ratio * lambda0;
    r.inferred_n = static_cast<std::uint32_t>(n);
    r.equivalent_photon_number = 4 * r.inferred_n;
    return r;
}

AnalysisResult analyze(const CorrelationTrace& trace, double lambda0) {
    return de_broglie_wavelength(detect_period(trace), lambda0, visibility(trace.g2));
}

CoherenceBudget coherence_budget(double linewidth_hz) {
    if (!(linewidth_hz > 0.0) || !std::isfinite(linewidth_hz)) {
        throw ValidationError("linewidth must be positive");
    }
    return {linewidth_hz, kSpeedOfLight / linewidth_hz};
}

}  // namespace ccdmzi
