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

#include "ccdmzi/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ccdmzi/analysis.hpp"
#include "ccdmzi/circuit.hpp"
#include "ccdmzi/elements.hpp"
#include "ccdmzi/errors.hpp"
#include "ccdmzi/kernels.hpp"
#include "ccdmzi/manifest.hpp"
#include "ccdmzi/noise.hpp"
#include "ccdmzi/trace_io.hpp"

#ifndef CCDMZI_VERSION
#define CCDMZI_VERSION "unknown"
#endif

namespace ccdmzi::cli {
namespace {

struct SweepOptions {
    std::uint32_t n = 1;
    double eta = 1.0;
    std::size_t samples = 4096;
    std::string window = "2pi";
    double i0 = 1.0;
    double lambda0 = 1.0;
    std::string out;
};

struct CircuitOptions {
    std::string file;
    std::size_t samples = 4096;
    std::string window = "2pi";
    double i0 = 1.0;
    double lambda0 = 1.0;
    std::string out;
};

struct AnalyzeOptions {
    std::string in;
    double lambda0 = 1.0;
};

struct NoiseOptions {
    std::uint32_t n = 1;
    double eta = 1.0;
    double sigma = 0.0;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    std::string mode = "correlated";
    std::size_t samples = 4096;
    std::string window = "2pi";
    double i0 = 1.0;
    std::string basis = "0";
    double threshold = 0.01;
    unsigned threads = 0;
    std::string out;
};

struct EquivOptions {
    std::string psi = "0";
    double i0 = 1.0;
};

std::string fmt(double v) {
    char buf[40];
    const int n = std::snprintf(buf, sizeof buf, "%.15g", v);
    return std::string(buf, static_cast<std::size_t>(n));
}

Complex amplitude_from_intensity(double i0) {
    if (!(i0 > 0.0) || !std::isfinite(i0)) {
        throw ValidationError("--i0 must be positive");
    }
    return {std::sqrt(i0), 0.0};
}

void print_result(std::ostream& out, const AnalysisResult& r) {
    out << "period_phase: " << fmt(r.period_phase) << '\n'
        << "visibility: " << fmt(r.visibility) << '\n'
        << "lambda_ratio: " << fmt(r.lambda_ratio) << '\n'
        << "lambda_cb: " << fmt(r.lambda_cb) << '\n'
        << "inferred_n: " << r.inferred_n << '\n'
        << "equivalent_photon_number: " << r.equivalent_photon_number << '\n';
}

template <typename Writer>
void write_outputs(const std::string& path, const RunManifest& manifest, Writer&& write_csv) {
    {
        std::ofstream csv(path, std::ios::binary);
        if (!csv) {
            throw ValidationError("cannot open '" + path + "' for writing");
        }
        write_csv(csv);
        if (!csv) {
            throw ValidationError("failed writing '" + path + "'");
        }
    }
    std::ofstream side(RunManifest::sidecar_path(path), std::ios::binary);
    if (!side) {
        throw ValidationError("cannot write manifest for '" + path + "'");
    }
    manifest.write(side);
}

RunManifest make_manifest(std::string subcommand, std::map<std::string, std::string> params) {
    RunManifest m;
    m.subcommand = std::move(subcommand);
    m.parameters = std::move(params);
    m.tool_version = CCDMZI_VERSION;
    return m;
}

int cmd_sweep(const SweepOptions& o, std::ostream& out) {
    ChainConfig cfg;
    cfg.n = o.n;
    cfg.eta = o.eta;
    cfg.input_amplitude = amplitude_from_intensity(o.i0);
    cfg.lambda0 = o.lambda0;
    const double window = parse_angle(o.window);
    const CorrelationTrace trace = g2_trace(cfg, o.samples, window);
    const AnalysisResult r = analyze(trace, cfg.lambda0);
    if (!o.out.empty()) {
        const RunManifest m = make_manifest("sweep", {{"n", std::to_string(o.n)},
                                                      {"eta", format_param(o.eta)},
                                                      {"samples", std::to_string(o.samples)},
                                                      {"window", format_param(window)},
                                                      {"i0", format_param(o.i0)},
                                                      {"lambda0", format_param(o.lambda0)},
                                                      {"out", o.out}});
        write_outputs(o.out, m, [&](std::ostream& s) { write_trace_csv(s, trace); });
    }
    out << "source: " << trace.provenance << '\n';
    print_result(out, r);
    return kExitOk;
}

int cmd_circuit(const CircuitOptions& o, std::ostream& out) {
    std::ifstream in(o.file, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot read '" + o.file + "'");
    }
    std::ostringstream text;
    text << in.rdbuf();
    const circuit::CircuitAst ast = circuit::parse(text.str());
    const Program program = circuit::to_program(ast);
    const double window = parse_angle(o.window);
    if (o.samples < 16) {
        throw ValidationError("--samples must be >= 16");
    }
    const CorrelationTrace trace =
        program_trace(program, amplitude_from_intensity(o.i0), PhaseGrid{0.0, window, o.samples}, "circuit " + o.file);
    const AnalysisResult r = analyze(trace, o.lambda0);
    if (!o.out.empty()) {
        const RunManifest m = make_manifest("circuit", {{"file", o.file},
                                                        {"samples", std::to_string(o.samples)},
                                                        {"window", format_param(window)},
                                                        {"i0", format_param(o.i0)},
                                                        {"lambda0", format_param(o.lambda0)},
                                                        {"out", o.out}});
        write_outputs(o.out, m, [&](std::ostream& s) { write_trace_csv(s, trace); });
    }
    out << "source: " << trace.provenance << " (" << program.size() << " elements)\n";
    print_result(out, r);
    return kExitOk;
}

int cmd_analyze(const AnalyzeOptions& o, std::ostream& out) {
    std::ifstream in(o.in, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot read '" + o.in + "'");
    }
    const CorrelationTrace trace = read_trace_csv(in);
    out << "samples: " << trace.size() << '\n';
    print_result(out, analyze(trace, o.lambda0));
    return kExitOk;
}

int cmd_noise(const NoiseOptions& o, std::ostream& out) {
    ChainConfig cfg;
    cfg.n = o.n;
    cfg.eta = o.eta;
    cfg.input_amplitude = amplitude_from_intensity(o.i0);
    NoiseConfig noise;
    noise.sigma = o.sigma;
    noise.trials = o.trials;
    noise.seed = o.seed;
    noise.mode = parse_jitter_mode(o.mode);
    noise.dark_threshold = o.threshold;
    const double window = parse_angle(o.window);
    const double basis = parse_angle(o.basis);

    const NoisyTrace trace = run_noise_ensemble(cfg, noise, o.samples, window, o.threads);
    const ErrorRate err = anticorrelation_error_rate(cfg, noise, basis);
    if (!o.out.empty()) {
        RunManifest m = make_manifest("noise", {{"n", std::to_string(o.n)},
                                                {"eta", format_param(o.eta)},
                                                {"sigma", format_param(o.sigma)},
                                                {"trials", std::to_string(o.trials)},
                                                {"mode", std::string(to_string(noise.mode))},
                                                {"samples", std::to_string(o.samples)},
                                                {"window", format_param(window)},
                                                {"i0", format_param(o.i0)},
                                                {"basis", format_param(basis)},
                                                {"threshold", format_param(o.threshold)},
                                                {"out", o.out}});
        m.seed = o.seed;
        write_outputs(o.out, m, [&](std::ostream& s) { write_noisy_csv(s, trace); });
    }
    out << "source: chain n=" << o.n << " eta=" << fmt(o.eta) << " sigma=" << fmt(o.sigma)
        << " mode=" << to_string(noise.mode) << " trials=" << o.trials << " seed=" << o.seed << '\n'
        << "visibility: " << fmt(trace.visibility) << '\n'
        << "visibility_ci95: " << fmt(trace.visibility_ci95) << '\n'
        << "error_rate: " << fmt(err.rate) << '\n'
        << "error_rate_ci95: " << fmt(err.ci95) << '\n';
    return kExitOk;
}

int cmd_equiv(const EquivOptions& o, std::ostream& out) {
    const double psi = parse_angle(o.psi);
    const Complex e0 = amplitude_from_intensity(o.i0);
    const double phi = kPi / 2.0 - psi;
    const FieldPair bs = bs_anticorrelation(psi, e0);
    const FieldPair mzi = apply(d_block(phi), FieldPair{e0, 0.0});
    const double diff = std::max(std::abs(bs.upper_intensity() - mzi.upper_intensity()),
                                 std::abs(bs.lower_intensity() - mzi.lower_intensity()));
    out << "psi: " << fmt(psi) << '\n'
        << "bs_picture: " << fmt(bs.upper_intensity()) << ' ' << fmt(bs.lower_intensity()) << '\n'
        << "mzi_phi: " << fmt(phi) << '\n'
        << "mzi_picture: " << fmt(mzi.upper_intensity()) << ' ' << fmt(mzi.lower_intensity()) << '\n'
        << "max_abs_diff: " << fmt(diff) << '\n';
    return kExitOk;
}

bool given(const std::vector<std::string>& args, const std::string& flag) {
    return std::any_of(args.begin(), args.end(),
                       [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
}

// Expands "--manifest FILE" into explicit flags for every key not already
// given on the command line.
std::vector<std::string> apply_manifest(std::vector<std::string> args) {
    if (args.size() < 2) {
        return args;
    }
    std::string path;
    for (std::size_t i = 2; i < args.size(); ++i) {
        if (args[i] == "--manifest" && i + 1 < args.size()) {
            path = args[i + 1];
        } else if (args[i].rfind("--manifest=", 0) == 0) {
            path = args[i].substr(11);
        }
    }
    if (path.empty()) {
        return args;
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ValidationError("cannot read manifest '" + path + "'");
    }
    const RunManifest m = RunManifest::read(in);
    if (m.subcommand != args[1]) {
        throw ValidationError("manifest is for '" + m.subcommand + "', not '" + args[1] + "'");
    }
    std::vector<std::string> extra;
    if (m.seed && !given(args, "--seed")) {
        extra.push_back("--seed=" + std::to_string(*m.seed));
    }
    for (const auto& [key, value] : m.parameters) {
        if (!given(args, "--" + key)) {
            extra.push_back("--" + key + "=" + value);
        }
    }
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
}

}  // namespace

double parse_angle(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
    double scale = 1.0;
    if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
        scale = kPi;
        s.resize(s.size() - 2);
        if (s.empty() || s == "+") {
            return kPi;
        }
        if (s == "-") {
            return -kPi;
        }
    }
    std::string_view digits = s;
    if (!digits.empty() && digits.front() == '+') {
        digits.remove_prefix(1);
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
    if (digits.empty() || ec != std::errc() || ptr != digits.data() + digits.size() || !std::isfinite(v)) {
        throw ValidationError("bad angle '" + std::string(text) + "'");
    }
    return v * scale;
}

int run(const std::vector<std::string>& argv_in, std::ostream& out, std::ostream& err) {
    std::vector<std::string> argv;
    try {
        argv = apply_manifest(argv_in);
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    CLI::App app{"Cascaded Mach-Zehnder (CCD-MZI) interferometer simulator", "ccdmzi"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(CCDMZI_VERSION));
    std::string manifest;

    SweepOptions so;
    auto* sweep = app.add_subcommand("sweep", "Sweep an n-block CCD-MZI chain and extract lambda_CB");
    sweep->add_option("--n", so.n, "Number of CCD blocks")->check(CLI::PositiveNumber)->capture_default_str();
    sweep->add_option("--eta", so.eta, "Amplitude transmission per connection pass")->capture_default_str();
    sweep->add_option("--samples", so.samples, "Phase grid samples")->capture_default_str();
    sweep->add_option("--window", so.window, "Sweep window (radians, 'pi' suffix allowed)")->capture_default_str();
    sweep->add_option("--i0", so.i0, "Input intensity")->capture_default_str();
    sweep->add_option("--lambda0", so.lambda0, "Carrier wavelength")->capture_default_str();
    sweep->add_option("--out", so.out, "CSV output path");
    sweep->add_option("--manifest", manifest, "Replay parameters from a run manifest");

    CircuitOptions co;
    auto* circ = app.add_subcommand("circuit", "Sweep a circuit description (.icd) file");
    circ->add_option("file,--file", co.file, "Circuit file")->required()->check(CLI::ExistingFile);
    circ->add_option("--samples", co.samples, "Phase grid samples")->capture_default_str();
    circ->add_option("--window", co.window, "Sweep window (radians, 'pi' suffix allowed)")->capture_default_str();
    circ->add_option("--i0", co.i0, "Input intensity")->capture_default_str();
    circ->add_option("--lambda0", co.lambda0, "Carrier wavelength")->capture_default_str();
    circ->add_option("--out", co.out, "CSV output path");
    circ->add_option("--manifest", manifest, "Replay parameters from a run manifest");

    AnalyzeOptions ao;
    auto* anal = app.add_subcommand("analyze", "Detect the g2 period of a CSV trace");
    anal->add_option("in,--in", ao.in, "Trace CSV")->required()->check(CLI::ExistingFile);
    anal->add_option("--lambda0", ao.lambda0, "Carrier wavelength")->capture_default_str();

    NoiseOptions no;
    auto* noise = app.add_subcommand("noise", "Monte Carlo phase-jitter ensemble");
    noise->add_option("--n", no.n, "Number of CCD blocks")->check(CLI::PositiveNumber)->capture_default_str();
    noise->add_option("--eta", no.eta, "Amplitude transmission per connection pass")->capture_default_str();
    noise->add_option("--sigma", no.sigma, "Jitter standard deviation (radians)")->capture_default_str();
    noise->add_option("--trials", no.trials, "Monte Carlo trials")->check(CLI::PositiveNumber)->capture_default_str();
    noise->add_option("--seed", no.seed, "RNG seed")->capture_default_str();
    noise->add_option("--mode", no.mode, "Jitter sharing")
        ->check(CLI::IsMember({"correlated", "independent", "correlated-per-block", "independent-per-shifter"}))
        ->capture_default_str();
    noise->add_option("--samples", no.samples, "Phase grid samples")->capture_default_str();
    noise->add_option("--window", no.window, "Sweep window (radians, 'pi' suffix allowed)")->capture_default_str();
    noise->add_option("--i0", no.i0, "Input intensity")->capture_default_str();
    noise->add_option("--basis", no.basis, "Anticorrelation basis phase for the error rate")->capture_default_str();
    noise->add_option("--threshold", no.threshold, "Dark-port fraction counted as an error")->capture_default_str();
    noise->add_option("--threads", no.threads, "Worker threads (0 = all cores)")->capture_default_str();
    noise->add_option("--out", no.out, "CSV output path");
    noise->add_option("--manifest", manifest, "Replay parameters from a run manifest");

    EquivOptions eo;
    auto* equiv = app.add_subcommand("equiv", "Compare the beam-splitter and MZI anticorrelation pictures");
    equiv->add_option("--psi", eo.psi, "BS input phase (radians, 'pi' suffix allowed)")->capture_default_str();
    equiv->add_option("--i0", eo.i0, "Input intensity")->capture_default_str();

    std::vector<const char*> cargs;
    cargs.reserve(argv.size());
    for (const std::string& a : argv) {
        cargs.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*sweep) {
            return cmd_sweep(so, out);
        }
        if (*circ) {
            return cmd_circuit(co, out);
        }
        if (*anal) {
            return cmd_analyze(ao, out);
        }
        if (*noise) {
            return cmd_noise(no, out);
        }
        if (*equiv) {
            return cmd_equiv(eo, out);
        }
    } catch (const ccdmzi::ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitParse;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }
    return kExitUsage;
}

}  // namespace ccdmzi::cli
