// Copyright 2026 The bellcompat Authors
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

/**
 * @file
 * Command-line front end: `jm`, `chsh`, `region`, `sample` and `verify`.
 *
 * Output is one JSON document (default) or CSV per invocation. Errors go to
 * stderr as a single JSON line {"code": ..., "message": ...}. Exit codes:
 * 0 ok, 1 verification failure, 2 usage or input error.
 */

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bellcompat/bellcompat.hpp"
#include "json.hpp"

namespace bellcompat::cli {

using nlohmann::ordered_json;

/// Thrown for malformed flag values; reported with code "UsageError".
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Radian value: a plain number, or [k*]pi[/d] such as "pi/2" or "-3*pi/4".
/// Degree markers are rejected.
inline double parse_real(std::string text) {
    auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t");
        const auto e = s.find_last_not_of(" \t");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    text = trim(text);
    if (text.empty()) {
        throw UsageError("empty number");
    }
    if (text.find("deg") != std::string::npos || text.find("\xC2\xB0") != std::string::npos) {
        throw UsageError("angles are accepted in radians only: '" + text + "'");
    }
    auto plain = [&](const std::string &s) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(s, &used);
        } catch (const std::exception &) {
            throw UsageError("not a number: '" + text + "'");
        }
        if (used != s.size() || !std::isfinite(v)) {
            throw UsageError("not a number: '" + text + "'");
        }
        return v;
    };
    const auto pi_at = text.find("pi");
    if (pi_at == std::string::npos) {
        return plain(text);
    }
    std::string head = trim(text.substr(0, pi_at));
    std::string tail = trim(text.substr(pi_at + 2));
    double factor = 1.0;
    if (head == "-") {
        factor = -1.0;
    } else if (!head.empty()) {
        if (head.back() != '*') {
            throw UsageError("malformed pi expression: '" + text + "'");
        }
        factor = plain(trim(head.substr(0, head.size() - 1)));
    }
    double divisor = 1.0;
    if (!tail.empty()) {
        if (tail.front() != '/') {
            throw UsageError("malformed pi expression: '" + text + "'");
        }
        divisor = plain(trim(tail.substr(1)));
        if (divisor == 0.0) {
            throw UsageError("division by zero in '" + text + "'");
        }
    }
    return factor * std::numbers::pi / divisor;
}

inline std::vector<std::string> split(const std::string &s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
        out.push_back(cur);
    }
    if (!s.empty() && s.back() == sep) {
        out.emplace_back();
    }
    return out;
}

/// "x", "-z", or an explicit "x:y:z" triple (normalized to unit length).
inline BlochVector parse_axis(const std::string &text) {
    if (text == "x" || text == "+x") {
        return BlochVector::unit_x();
    }
    if (text == "y" || text == "+y") {
        return BlochVector::unit_y();
    }
    if (text == "z" || text == "+z") {
        return BlochVector::unit_z();
    }
    if (text == "-x") {
        return BlochVector::unit_x() * -1.0;
    }
    if (text == "-y") {
        return BlochVector::unit_y() * -1.0;
    }
    if (text == "-z") {
        return BlochVector::unit_z() * -1.0;
    }
    const auto parts = split(text, ':');
    if (parts.size() != 3) {
        throw UsageError("axis must be x, y, z (optionally signed) or x:y:z, got '" + text + "'");
    }
    const BlochVector v{parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2])};
    if (v.norm() < 1e-12) {
        throw UsageError("axis '" + text + "' has zero length");
    }
    return v * (1.0 / v.norm());
}

inline std::vector<BlochVector> parse_axes(const std::string &text, std::size_t expected) {
    const auto parts = split(text, ',');
    if (parts.size() != expected) {
        throw UsageError("expected " + std::to_string(expected) + " comma-separated axes, got '" + text + "'");
    }
    std::vector<BlochVector> out;
    for (const auto &p : parts) {
        out.push_back(parse_axis(p));
    }
    return out;
}

struct GridSpec {
    double start = 0.0;
    double stop = 0.0;
    int steps = 1;

    double at(int i) const {
        if (steps == 1) {
            return start;
        }
        if (i == steps - 1) {
            return stop;
        }
        return start + (stop - start) * static_cast<double>(i) / (steps - 1);
    }
};

/// "start:stop:steps" with steps >= 1 points and start <= stop.
inline GridSpec parse_grid(const std::string &text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3) {
        throw UsageError("grid must be start:stop:steps, got '" + text + "'");
    }
    GridSpec g{parse_real(parts[0]), parse_real(parts[1]), 0};
    const double steps = parse_real(parts[2]);
    if (steps < 1 || steps != std::floor(steps) || steps > 1e7) {
        throw UsageError("grid steps must be a positive integer, got '" + parts[2] + "'");
    }
    g.steps = static_cast<int>(steps);
    if (g.start > g.stop) {
        throw UsageError("grid start exceeds stop in '" + text + "'");
    }
    return g;
}

/// Output options shared by every subcommand.
struct OutputOptions {
    std::string format = "json";
    std::string path;
    int precision = 6;

    std::string fixed(double v) const {
        if (v == 0.0) {
            v = 0.0;  // drop negative zero
        }
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*f", precision, v);
        std::string s(buf);
        if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') {
            s.erase(0, 1);
        }
        return s;
    }

    /// JSON number rounded to the configured decimals.
    double rounded(double v) const {
        return std::stod(fixed(v));
    }
};

inline std::string scientific(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

inline void add_output_options(CLI::App *sub, OutputOptions &opt) {
    sub->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--output,-o", opt.path, "Write to this file instead of stdout");
    sub->add_option("--precision", opt.precision, "Decimal digits in numeric output")->check(CLI::Range(1, 15));
}

inline void emit(const OutputOptions &opt, const std::string &body, std::ostream &out) {
    if (opt.path.empty()) {
        out << body;
        return;
    }
    std::ofstream f(opt.path, std::ios::binary);
    if (!f) {
        throw UsageError("cannot open output file '" + opt.path + "'");
    }
    f << body;
}

inline ordered_json axis_json(const BlochVector &v) {
    return ordered_json::array({v.x, v.y, v.z});
}

inline std::string status_name(JmStatus s) {
    return std::string(to_string(s));
}

// ---------------------------------------------------------------- jm

struct JmOptions {
    std::string axes;
    std::optional<std::string> lambda;
    std::optional<std::string> lambda_range;
    bool threshold = false;
    double tol = 1e-9;
    std::int64_t max_iter = 200'000;
    OutputOptions out;
};

inline std::string run_jm(const JmOptions &o) {
    const auto axes = parse_axes(o.axes, 2);
    if (!(o.tol > 0.0)) {
        throw Error(ErrorCode::InvalidTolerance, "tolerance must be positive");
    }
    const int modes = (o.lambda ? 1 : 0) + (o.lambda_range ? 1 : 0);
    if (modes > 1 || (modes == 0 && !o.threshold)) {
        throw UsageError("give exactly one of --lambda or --lambda-range, or --threshold");
    }
    std::vector<double> lambdas;
    if (o.lambda) {
        lambdas.push_back(parse_real(*o.lambda));
    } else if (o.lambda_range) {
        const GridSpec g = parse_grid(*o.lambda_range);
        for (int i = 0; i < g.steps; ++i) {
            lambdas.push_back(g.at(i));
        }
    }
    const bool with_threshold = o.threshold || o.lambda_range.has_value();
    const std::optional<double> threshold =
        with_threshold ? std::optional<double>(sharpness_threshold(axes[0], axes[1], std::min(o.tol, 1e-6)))
                       : std::nullopt;

    ordered_json doc;
    doc["command"] = "jm";
    doc["axes"] = ordered_json::array({axis_json(axes[0]), axis_json(axes[1])});
    doc["results"] = ordered_json::array();
    std::ostringstream csv;
    if (threshold) {
        csv << "# threshold=" << o.out.fixed(*threshold) << "\n";
    }
    if (!lambdas.empty()) {
        csv << "lambda,status,margin,feasibility_status,residual\n";
    }
    for (double lambda : lambdas) {
        const BinaryPovm p = noisy_pauli_povm(axes[0], lambda);
        const BinaryPovm q = noisy_pauli_povm(axes[1], lambda);
        const JmVerdict analytic = busch_compatible(p, q);
        const JmVerdict numeric = parent_povm_search(p, q, o.tol, o.max_iter);
        const double residual = -numeric.margin;
        ordered_json row;
        row["lambda"] = o.out.rounded(lambda);
        row["status"] = status_name(analytic.status);
        row["method"] = std::string(to_string(analytic.method));
        row["margin"] = o.out.rounded(analytic.margin);
        row["feasibility"] = {
            {"status", status_name(numeric.status)},
            {"residual", residual},
            {"iterations", numeric.iterations},
        };
        doc["results"].push_back(row);
        csv << o.out.fixed(lambda) << ',' << status_name(analytic.status) << ',' << o.out.fixed(analytic.margin) << ','
            << status_name(numeric.status) << ',' << scientific(residual) << "\n";
    }
    if (threshold) {
        doc["threshold"] = o.out.rounded(*threshold);
    }
    if (o.out.format == "csv") {
        if (lambdas.empty()) {
            return "threshold\n" + o.out.fixed(*threshold) + "\n";
        }
        return csv.str();
    }
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------- settings and states

/// Projective axes (sharpness 1) or the noisy family at sharpness λ.
struct SettingSpec {
    std::string label;
    std::array<BlochVector, 4> axes;
    double sharpness = 1.0;
    std::optional<CanonicalAngles> canonical;

    ChshSetting observables() const {
        if (canonical) {
            return canonical_setting(*canonical);
        }
        return povms().observables();
    }

    PovmSetting povms() const {
        return {
            {noisy_pauli_povm(axes[0], sharpness), noisy_pauli_povm(axes[1], sharpness)},
            {noisy_pauli_povm(axes[2], sharpness), noisy_pauli_povm(axes[3], sharpness)},
        };
    }

    bool projective() const {
        return sharpness == 1.0;
    }
};

struct SettingOptions {
    std::optional<std::string> canonical;
    std::optional<std::string> noisy;
    std::optional<std::string> axes;
};

inline void add_setting_options(CLI::App *sub, SettingOptions &o) {
    sub->add_option("--canonical", o.canonical, "Canonical projective setting THETA,PHI (radians, each in [0, pi/2])");
    sub->add_option("--noisy", o.noisy, "Noisy Pauli family at sharpness LAMBDA");
    sub->add_option("--axes", o.axes, "Projective setting from four axes A0,A1,B0,B1");
}

inline SettingSpec parse_setting(const SettingOptions &o) {
    const int given = (o.canonical ? 1 : 0) + (o.noisy ? 1 : 0) + (o.axes ? 1 : 0);
    if (given != 1) {
        throw UsageError("give exactly one of --canonical, --noisy or --axes");
    }
    SettingSpec s;
    if (o.canonical) {
        const auto parts = split(*o.canonical, ',');
        if (parts.size() != 2) {
            throw UsageError("--canonical expects THETA,PHI");
        }
        const CanonicalAngles a{parse_real(parts[0]), parse_real(parts[1])};
        require_canonical(a);
        const double h = 0.5 * a.theta;
        s.label = "canonical";
        s.canonical = a;
        s.axes = {BlochVector::unit_z(),
                  BlochVector{std::sin(a.phi), 0.0, std::cos(a.phi)},
                  BlochVector{std::sin(h), 0.0, std::cos(h)},
                  BlochVector{-std::sin(h), 0.0, std::cos(h)}};
    } else if (o.noisy) {
        const double r = 1.0 / std::numbers::sqrt2;
        s.label = "noisy";
        s.sharpness = parse_real(*o.noisy);
        if (!(s.sharpness >= 0.0 && s.sharpness <= 1.0)) {
            throw Error(ErrorCode::OutOfRange, "sharpness must lie in [0, 1]");
        }
        s.axes = {BlochVector::unit_z(), BlochVector::unit_x(), BlochVector{r, 0.0, r}, BlochVector{-r, 0.0, r}};
    } else {
        const auto axes = parse_axes(*o.axes, 4);
        s.label = "axes";
        s.axes = {axes[0], axes[1], axes[2], axes[3]};
    }
    return s;
}

inline ComplexMatrix read_matrix(const ordered_json &j, std::size_t rows, std::size_t cols) {
    const auto &re = j.at("real");
    const ordered_json im = j.contains("imag") ? j.at("imag") : ordered_json();
    std::vector<Complex> entries;
    if (cols == 1) {
        if (re.size() != rows || (!im.is_null() && im.size() != rows)) {
            throw UsageError("state vector must have 4 components");
        }
        for (std::size_t i = 0; i < rows; ++i) {
            entries.emplace_back(re[i].get<double>(), im.is_null() ? 0.0 : im[i].get<double>());
        }
    } else {
        if (re.size() != rows) {
            throw UsageError("density matrix must be 4x4");
        }
        for (std::size_t r = 0; r < rows; ++r) {
            if (re[r].size() != cols || (!im.is_null() && im[r].size() != cols)) {
                throw UsageError("density matrix must be 4x4");
            }
            for (std::size_t c = 0; c < cols; ++c) {
                entries.emplace_back(re[r][c].get<double>(), im.is_null() ? 0.0 : im[r][c].get<double>());
            }
        }
    }
    return ComplexMatrix(rows, cols, std::move(entries));
}

/// phi+ | mixed | schmidt:E | file:PATH. Files hold {"vector": {"real": [4],
/// "imag": [4]}} or {"density": {"real": [[4x4]], "imag": [[4x4]]}}.
inline DensityMatrix parse_state(const std::string &text) {
    if (text == "phi+") {
        return DensityMatrix::phi_plus();
    }
    if (text == "mixed") {
        return DensityMatrix::maximally_mixed();
    }
    if (text.rfind("schmidt:", 0) == 0) {
        return schmidt_state(parse_real(text.substr(8))).density();
    }
    if (text.rfind("file:", 0) == 0) {
        const std::string path = text.substr(5);
        std::ifstream f(path);
        if (!f) {
            throw UsageError("cannot open state file '" + path + "'");
        }
        ordered_json j;
        try {
            j = ordered_json::parse(f);
            if (j.contains("vector")) {
                return DensityMatrix::pure(read_matrix(j.at("vector"), 4, 1));
            }
            if (j.contains("density")) {
                return DensityMatrix(read_matrix(j.at("density"), 4, 4));
            }
        } catch (const nlohmann::json::exception &e) {
            throw UsageError("malformed state file '" + path + "': " + e.what());
        }
        throw UsageError("state file needs a 'vector' or 'density' field");
    }
    throw UsageError("state must be phi+, mixed, schmidt:E or file:PATH, got '" + text + "'");
}

// ---------------------------------------------------------------- chsh

struct ChshOptions {
    SettingOptions setting;
    std::optional<std::string> state;
    bool max = false;
    OutputOptions out;
};

inline std::string run_chsh(const ChshOptions &o) {
    const SettingSpec spec = parse_setting(o.setting);
    if (o.state.has_value() == o.max) {
        throw UsageError("give exactly one of --state or --max");
    }
    const ChshSetting s = spec.observables();
    const double delta = incompatibility_degree(s);
    const ChshReport spectral = spec.projective() ? landau_bound(s) : max_over_states(s);
    const double value = o.max ? max_over_states(s).value : chsh_value(s, parse_state(*o.state));
    const bool violates = value > 2.0 + 1e-9;

    if (o.out.format == "csv") {
        std::ostringstream csv;
        csv << "value,bound,mu,delta,violates\n"
            << o.out.fixed(value) << ',' << o.out.fixed(spectral.bound) << ',' << o.out.fixed(spectral.mu) << ','
            << o.out.fixed(delta) << ',' << (violates ? "true" : "false") << "\n";
        return csv.str();
    }
    ordered_json doc;
    doc["command"] = "chsh";
    doc["setting"] = {{"kind", spec.label}, {"sharpness", o.out.rounded(spec.sharpness)}};
    doc["state"] = o.max ? "max" : *o.state;
    doc["value"] = o.out.rounded(value);
    doc["bound"] = o.out.rounded(spectral.bound);
    doc["bound_kind"] = spec.projective() ? "landau" : "spectral";
    doc["mu"] = o.out.rounded(spectral.mu);
    doc["delta"] = o.out.rounded(delta);
    doc["violates"] = violates;
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------- region

struct RegionOptions {
    std::string e_grid = "0:0.5:11";
    std::string delta_grid = "0:1:11";
    OutputOptions out;
};

inline std::string run_region(const RegionOptions &o) {
    const GridSpec eg = parse_grid(o.e_grid);
    const GridSpec dg = parse_grid(o.delta_grid);
    const double threshold = entanglement_threshold();
    ordered_json doc;
    doc["command"] = "region";
    doc["entanglement_threshold"] = o.out.rounded(threshold);
    doc["rows"] = ordered_json::array();
    std::ostringstream csv;
    csv << "# entanglement_threshold=" << o.out.fixed(threshold) << "\n";
    csv << "E,Delta,F1,nonlocal\n";
    for (int i = 0; i < eg.steps; ++i) {
        const double e = eg.at(i);
        for (int j = 0; j < dg.steps; ++j) {
            const double delta = dg.at(j);
            const double f1 = f1_closed_form(e, delta);
            const bool nonlocal = nonlocality_region(e, delta);
            doc["rows"].push_back({{"E", o.out.rounded(e)},
                                   {"Delta", o.out.rounded(delta)},
                                   {"F1", o.out.rounded(f1)},
                                   {"nonlocal", nonlocal}});
            csv << o.out.fixed(e) << ',' << o.out.fixed(delta) << ',' << o.out.fixed(f1) << ','
                << (nonlocal ? "true" : "false") << "\n";
        }
    }
    return o.out.format == "csv" ? csv.str() : doc.dump(2) + "\n";
}

// ---------------------------------------------------------------- sample

struct SampleOptions {
    SettingOptions setting;
    std::string state = "phi+";
    std::int64_t shots = 1'000'000;
    std::uint64_t seed = 0;
    OutputOptions out;
};

inline std::string run_sample(const SampleOptions &o) {
    const SettingSpec spec = parse_setting(o.setting);
    if (o.shots < 1) {
        throw Error(ErrorCode::OutOfRange, "shots must be at least 1");
    }
    const DensityMatrix rho = parse_state(o.state);
    const PovmSetting povms = spec.povms();
    const SampleEstimate est = sample_estimate(povms, rho, o.shots, o.seed);
    const double exact = chsh_expectation(povms.observables(), rho);
    if (o.out.format == "csv") {
        std::ostringstream csv;
        csv << "estimate,standard_error,exact,shots_per_pair,seed\n"
            << o.out.fixed(est.value) << ',' << o.out.fixed(est.standard_error) << ',' << o.out.fixed(exact) << ','
            << o.shots << ',' << o.seed << "\n";
        return csv.str();
    }
    ordered_json doc;
    doc["command"] = "sample";
    doc["state"] = o.state;
    doc["shots_per_pair"] = o.shots;
    doc["seed"] = o.seed;
    doc["estimate"] = o.out.rounded(est.value);
    doc["standard_error"] = o.out.rounded(est.standard_error);
    doc["exact"] = o.out.rounded(exact);
    doc["correlators"] = ordered_json::array();
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            doc["correlators"].push_back({{"x", x}, {"y", y}, {"value", o.out.rounded(est.correlators[x][y])}});
        }
    }
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------- verify

struct VerifyOptions {
    std::string suite;
    std::uint64_t seed = 0;
    bool list = false;
    OutputOptions out;
};

/// Returns the rendered report and whether every check passed.
inline std::pair<std::string, bool> run_verify(const VerifyOptions &o) {
    if (o.list) {
        std::string body;
        for (const auto &n : suite_names()) {
            body += n + "\n";
        }
        return {body, true};
    }
    if (o.suite.empty()) {
        throw UsageError("verify needs a suite name (or --list)");
    }
    std::vector<std::string> names;
    if (o.suite == "all") {
        names = suite_names();
    } else {
        const auto known = suite_names();
        if (std::find(known.begin(), known.end(), o.suite) == known.end()) {
            throw UsageError("unknown suite '" + o.suite + "'");
        }
        names = {o.suite};
    }
    bool all_passed = true;
    ordered_json doc;
    doc["command"] = "verify";
    doc["suite"] = o.suite;
    doc["seed"] = o.seed;
    doc["checks"] = ordered_json::array();
    std::ostringstream csv;
    csv << "suite,check,passed,deviation,tolerance\n";
    for (const auto &n : names) {
        const SuiteResult r = run_suite(n, o.seed);
        all_passed = all_passed && r.passed();
        for (const auto &c : r.checks) {
            doc["checks"].push_back({{"suite", r.suite},
                                     {"check", c.name},
                                     {"passed", c.passed},
                                     {"deviation", c.deviation},
                                     {"tolerance", c.tolerance}});
            csv << r.suite << ',' << c.name << ',' << (c.passed ? "pass" : "fail") << ',' << scientific(c.deviation) << ','
                << scientific(c.tolerance) << "\n";
        }
    }
    doc["passed"] = all_passed;
    return {o.out.format == "csv" ? csv.str() : doc.dump(2) + "\n", all_passed};
}

// ---------------------------------------------------------------- entry point

inline std::string error_line(std::string_view code, const std::string &message) {
    return ordered_json{{"code", code}, {"message", message}}.dump() + "\n";
}

/// Runs the CLI on `args` (without the program name).
inline int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Bell nonlocality and measurement incompatibility in the CHSH scenario", "bellcompat"};
    app.set_config("--config", "", "Key-value file mirroring the flags; flags given on the command line win");
    app.require_subcommand(1);

    JmOptions jm;
    auto *jm_cmd = app.add_subcommand("jm", "Joint measurability of a noisy Pauli pair");
    jm_cmd->add_option("--axes", jm.axes, "Two axes A,B (x, y, z, -z or x:y:z)")->required();
    jm_cmd->add_option("--lambda", jm.lambda, "Sharpness in [0, 1]");
    jm_cmd->add_option("--lambda-range", jm.lambda_range, "Sharpness grid start:stop:steps");
    jm_cmd->add_flag("--threshold", jm.threshold, "Print the bisected compatibility threshold");
    jm_cmd->add_option("--tol", jm.tol, "Feasibility tolerance");
    jm_cmd->add_option("--max-iter", jm.max_iter, "Feasibility iteration cap");
    add_output_options(jm_cmd, jm.out);

    ChshOptions chsh;
    auto *chsh_cmd = app.add_subcommand("chsh", "CHSH value, Landau bound and violation flag");
    add_setting_options(chsh_cmd, chsh.setting);
    chsh_cmd->add_option("--state", chsh.state, "phi+, mixed, schmidt:E or file:PATH");
    chsh_cmd->add_flag("--max", chsh.max, "Maximize over all states");
    add_output_options(chsh_cmd, chsh.out);

    RegionOptions region;
    auto *region_cmd = app.add_subcommand("region", "Nonlocality boundary table over (E, Delta)");
    region_cmd->add_option("--e-grid", region.e_grid, "Entanglement grid start:stop:steps");
    region_cmd->add_option("--delta-grid", region.delta_grid, "Incompatibility grid start:stop:steps");
    add_output_options(region_cmd, region.out);

    SampleOptions sample;
    auto *sample_cmd = app.add_subcommand("sample", "Finite-shot CHSH estimate");
    add_setting_options(sample_cmd, sample.setting);
    sample_cmd->add_option("--state", sample.state, "phi+, mixed, schmidt:E or file:PATH");
    sample_cmd->add_option("--shots", sample.shots, "Shots per setting pair");
    sample_cmd->add_option("--seed", sample.seed, "Generator seed");
    add_output_options(sample_cmd, sample.out);

    VerifyOptions verify;
    auto *verify_cmd = app.add_subcommand("verify", "Cross-oracle verification suites");
    verify_cmd->add_option("suite", verify.suite, "Suite name or 'all'");
    verify_cmd->add_option("--seed", verify.seed, "Seed for randomized suites");
    verify_cmd->add_flag("--list", verify.list, "List suite names");
    add_output_options(verify_cmd, verify.out);

    std::vector<std::string> argv_store{"bellcompat"};
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char *> argv;
    for (auto &a : argv_store) {
        argv.push_back(a.data());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp &) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError &e) {
        err << error_line("UsageError", e.what());
        return 2;
    }

    try {
        if (*jm_cmd) {
            emit(jm.out, run_jm(jm), out);
        } else if (*chsh_cmd) {
            emit(chsh.out, run_chsh(chsh), out);
        } else if (*region_cmd) {
            emit(region.out, run_region(region), out);
        } else if (*sample_cmd) {
            emit(sample.out, run_sample(sample), out);
        } else if (*verify_cmd) {
            auto [body, passed] = run_verify(verify);
            emit(verify.out, body, out);
            return passed ? 0 : 1;
        }
    } catch (const Error &e) {
        err << error_line(error_code_name(e.code()), e.what());
        return 2;
    } catch (const UsageError &e) {
        err << error_line("UsageError", e.what());
        return 2;
    }
    return 0;
}

}  // namespace bellcompat::cli
