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

// Acceptance runner: one PASS/FAIL line per criterion. With an argument N only
// criterion N runs. Exit status is 0 iff every selected criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "bellcompat/bellcompat.hpp"
#include "bellcompat_cli.hpp"
#include "json.hpp"

using namespace bellcompat;

namespace {

struct Outcome {
    bool passed;
    std::string detail;
};

std::string fmt(const char *pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

const CheckResult &check(const SuiteResult &r, const std::string &name) {
    for (const auto &c : r.checks) {
        if (c.name == name) {
            return c;
        }
    }
    std::fprintf(stderr, "missing check %s\n", name.c_str());
    std::abort();
}

Outcome tsirelson() {
    std::ostringstream out;
    std::ostringstream err;
    const int code = cli::run({"chsh", "--canonical", "pi/2,pi/2", "--state", "phi+", "--precision", "15"}, out, err);
    if (code != 0) {
        return {false, "cli exit " + std::to_string(code) + ": " + err.str()};
    }
    const double value = nlohmann::json::parse(out.str())["value"].get<double>();
    const double dev = std::abs(value - 2.0 * std::numbers::sqrt2);
    return {dev <= 1e-9, fmt("value=%.15f |dev|=%.2e tol=1e-9", value, dev)};
}

Outcome landau() {
    std::mt19937_64 rng(detail::splitmix64(0));
    double stated = 0.0;
    double corrected = 0.0;
    double bound_dev = 0.0;
    double min_excess = std::numeric_limits<double>::infinity();
    const ComplexMatrix id = ComplexMatrix::identity(4);
    for (int i = 0; i < 500; ++i) {
        const ChshSetting s = ChshSetting::from_axes(random_axis(rng), random_axis(rng), random_axis(rng), random_axis(rng));
        const ComplexMatrix op = chsh_operator(s);
        const ComplexMatrix sq = op * op;
        const ComplexMatrix j = commutator_product(s);
        stated = std::max(stated, max_abs_diff(sq, 4.0 * id + 4.0 * j));
        corrected = std::max(corrected, max_abs_diff(sq, 4.0 * id - 4.0 * j));
        const ChshReport r = landau_bound(s);
        const Spectrum spec = eig_hermitian(op);
        bound_dev = std::max(bound_dev, std::abs(r.bound - std::max(std::abs(spec.min()), std::abs(spec.max()))));
        if (commutator(s.a0, s.a1).frobenius_norm() > 1e-9 && commutator(s.b0, s.b1).frobenius_norm() > 1e-9) {
            min_excess = std::min(min_excess, r.bound - 2.0);
        }
    }
    const bool ok = stated <= 1e-9 && bound_dev <= 1e-9 && min_excess > 1e-12;
    return {ok, fmt("max|S^2-4I-4J|=%.2e (with -4J: %.2e) tol=1e-9; ", stated, corrected) +
                    fmt("max|bound-spectral|=%.2e; min(bound-2)=%.3e", bound_dev, min_excess)};
}

Outcome window() {
    const SuiteResult r = detail::verify_window(0);
    const double threshold = sharpness_threshold(BlochVector::unit_z(), BlochVector::unit_x(), 1e-12);
    // Feasibility oracle on either side of the bisected threshold.
    bool agree = true;
    for (double offset : {-1e-3, 1e-3}) {
        const BinaryPovm p = noisy_pauli_povm(BlochVector::unit_z(), threshold + offset);
        const BinaryPovm q = noisy_pauli_povm(BlochVector::unit_x(), threshold + offset);
        agree = agree && parent_povm_search(p, q).status == busch_compatible(p, q).status;
    }
    // Scan of (1/√2, 2^(-1/4)]: incompatible everywhere, never violating.
    const double lo = 1.0 / std::numbers::sqrt2;
    const double hi = std::pow(2.0, -0.25);
    bool scan = true;
    double worst = 0.0;
    for (int i = 1; i <= 50; ++i) {
        const double lambda = lo + (hi - lo) * i / 50.0;
        const PovmSetting f = detail::noisy_family(lambda);
        scan = scan && busch_compatible(f.alice[0], f.alice[1]).status == JmStatus::Incompatible;
        const double best = max_over_states(f.observables()).value;
        worst = std::max(worst, best);
        scan = scan && best <= 2.0 + 1e-9;
    }
    const bool ok = r.passed() && agree && scan;
    return {ok, fmt("max|max_over_states-2sqrt2*l^2|=%.2e; |threshold-1/sqrt2|=%.2e; window max=%.12f",
                    check(r, "max_over_states_vs_closed_form").deviation, std::abs(threshold - lo), worst) +
                    (agree ? "; oracles agree" : "; oracles DISAGREE")};
}

Outcome feasibility() {
    const SuiteResult r = detail::verify_jm(0, 200);
    const CheckResult &dis = check(r, "analytic_vs_feasibility_disagreements");
    const CheckResult &def = check(r, "parent_defect");
    return {r.passed(), fmt("200 pairs, disagreements=%.0f, max parent defect=%.2e tol=1e-8", dis.deviation,
                            def.deviation)};
}

Outcome closed_form() {
    const auto t0 = std::chrono::steady_clock::now();
    const SuiteResult r = detail::verify_f1(0, 5, 20);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double dev = check(r, "closed_vs_numeric").deviation;
    return {r.passed() && secs <= 300.0, fmt("max|closed-numeric|=%.2e tol=1e-6; runtime=%.2fs budget=300s", dev, secs)};
}

Outcome stationarity() {
    const SuiteResult r = detail::verify_stationarity(0, 100);
    return {r.passed(), fmt("max|sin^2+cos^2-1|=%.2e tol=1e-10; max|F-F1|=%.2e tol=1e-9",
                            check(r, "unit_circle").deviation, check(r, "objective_at_stationary_point").deviation)};
}

Outcome corollary1() {
    const double t = entanglement_threshold();
    const double reference = 0.5 * (1.0 - std::sqrt(2.0 * std::numbers::sqrt2 - 2.0));
    const SuiteResult r = detail::verify_corollaries(0);
    const bool ok = std::abs(t - reference) <= 1e-15 && std::abs(t - 0.0449100) <= 1e-6 &&
                    check(r, "threshold_boundary").passed && check(r, "nonlocal_above_threshold").passed;
    return {ok, fmt("threshold=%.10f; |F1(threshold,1)-2|=%.2e tol=1e-10", t, check(r, "threshold_boundary").deviation) +
                    (check(r, "nonlocal_above_threshold").passed ? "; nonlocal on (0,1] at threshold+1e-3"
                                                                : "; scan FAILED")};
}

Outcome corollary2() {
    const MonotonicityReport maximal = monotonicity_check(0.5, 10000);
    const MonotonicityReport quarter = monotonicity_check(0.25, 10000);
    const double low = f1_closed_form(0.03, 0.1);
    const double high = f1_closed_form(0.03, 1.0);
    const bool ok = maximal.kind == Monotonicity::Monotone && quarter.kind == Monotonicity::NonMonotone && low > 2.0 &&
                    high < 2.0;
    return {ok, std::string("E=1/2 ") + (maximal.kind == Monotonicity::Monotone ? "Monotone" : "NonMonotone") +
                    ", E=1/4 " + (quarter.kind == Monotonicity::Monotone ? "Monotone" : "NonMonotone") +
                    fmt("; F1(0.03,0.1)=%.6f F1(0.03,1)=%.6f", low, high)};
}

Outcome finite_shot() {
    struct Fixture {
        PovmSetting povms;
        DensityMatrix rho;
    };
    const std::vector<Fixture> fixtures{
        {detail::noisy_family(1.0), DensityMatrix::phi_plus()},
        {detail::noisy_family(0.9), schmidt_state(0.25).density()},
        {detail::noisy_family(0.75), DensityMatrix::maximally_mixed()},
    };
    bool ok = true;
    double worst = 0.0;
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
        const auto &f = fixtures[i];
        const SampleEstimate a = sample_estimate(f.povms, f.rho, 1'000'000, 2026 + i);
        const SampleEstimate b = sample_estimate(f.povms, f.rho, 1'000'000, 2026 + i);
        const double exact = chsh_expectation(f.povms.observables(), f.rho);
        const double z = std::abs(a.value - exact) / a.standard_error;
        worst = std::max(worst, z);
        ok = ok && z <= 5.0 && a.value == b.value && a.counts == b.counts;
    }
    return {ok, fmt("3 fixtures at 1e6 shots, max |estimate-exact|/SE=%.3f (limit 5); repeated runs identical", worst)};
}

}  // namespace

int main(int argc, char **argv) {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"Tsirelson reproduction", tsirelson},
        {"Square identity and Landau bound", landau},
        {"Incompatible-but-local window", window},
        {"Feasibility solver soundness", feasibility},
        {"Closed form vs optimizer", closed_form},
        {"Stationarity consistency", stationarity},
        {"Entanglement threshold", corollary1},
        {"Monotonicity and witness pair", corollary2},
        {"Finite-shot sanity", finite_shot},
    };
    int only = 0;
    if (argc > 1) {
        only = std::atoi(argv[1]);
        if (only < 1 || only > static_cast<int>(criteria.size())) {
            std::fprintf(stderr, "criterion must be 1..%zu\n", criteria.size());
            return 2;
        }
    }
    bool all = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        if (only != 0 && static_cast<int>(i) + 1 != only) {
            continue;
        }
        Outcome o{false, ""};
        try {
            o = criteria[i].second();
        } catch (const std::exception &e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        all = all && o.passed;
        std::printf("criterion %zu: %s %s (%s)\n", i + 1, o.passed ? "PASS" : "FAIL", criteria[i].first.c_str(),
                    o.detail.c_str());
    }
    return all ? 0 : 1;
}
