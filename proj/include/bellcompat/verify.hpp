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
 * Cross-oracle verification suites. Each suite pairs two independent routes
 * to the same quantity and reports the worst deviation against a fixed
 * tolerance.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "bellcompat/chsh.hpp"
#include "bellcompat/compat.hpp"
#include "bellcompat/entopt.hpp"
#include "bellcompat/measurement.hpp"

namespace bellcompat {

struct CheckResult {
    std::string name;
    bool passed = false;
    double deviation = 0.0;
    double tolerance = 0.0;
};

struct SuiteResult {
    std::string suite;
    std::vector<CheckResult> checks;

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult &c) { return c.passed; });
    }
};

inline std::vector<std::string> suite_names() {
    return {"landau", "f1", "jm", "window", "stationarity", "corollaries"};
}

/// Uniform direction on the sphere.
inline BlochVector random_axis(std::mt19937_64 &rng) {
    const double z = 2.0 * detail::unit_uniform(rng) - 1.0;
    const double az = 2.0 * std::numbers::pi * detail::unit_uniform(rng);
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(az), r * std::sin(az), z};
}

namespace detail {

inline CheckResult upper_check(std::string name, double deviation, double tolerance) {
    return {std::move(name), deviation <= tolerance, deviation, tolerance};
}

inline SuiteResult verify_landau(std::uint64_t seed, int settings = 500) {
    std::mt19937_64 rng(splitmix64(seed));
    double identity_dev = 0.0;
    double bound_dev = 0.0;
    double min_excess = std::numeric_limits<double>::infinity();
    for (int i = 0; i < settings; ++i) {
        const ChshSetting s = ChshSetting::from_axes(random_axis(rng), random_axis(rng), random_axis(rng), random_axis(rng));
        const ComplexMatrix op = chsh_operator(s);
        const ComplexMatrix j = commutator_product(s);
        // With S = A0⊗(B0 + B1) + A1⊗(B0 - B1) the cross terms enter with a
        // minus sign: S² = 4I - [A0, A1]⊗[B0, B1] = 4(I - J). The spectrum of J
        // is symmetric for qubits, so the top eigenvalue is unaffected.
        identity_dev = std::max(identity_dev, max_abs_diff(op * op, 4.0 * ComplexMatrix::identity(4) - 4.0 * j));
        const ChshReport landau = landau_bound(s);
        const Spectrum spec = eig_hermitian(op);
        const double spectral = std::max(std::abs(spec.min()), std::abs(spec.max()));
        bound_dev = std::max(bound_dev, std::abs(landau.bound - spectral));
        if (commutator(s.a0, s.a1).frobenius_norm() > 1e-9 && commutator(s.b0, s.b1).frobenius_norm() > 1e-9) {
            min_excess = std::min(min_excess, landau.bound - 2.0);
        }
    }
    SuiteResult r{"landau", {}};
    r.checks.push_back(upper_check("square_identity", identity_dev, 1e-9));
    r.checks.push_back(upper_check("bound_vs_spectral", bound_dev, 1e-9));
    r.checks.push_back({"incompatible_pairs_violate", min_excess > 1e-12, min_excess, 1e-12});
    return r;
}

inline SuiteResult verify_f1(std::uint64_t seed, int grid = 5, int restarts = 20) {
    constexpr double kHalfPi = std::numbers::pi / 2;
    double dev = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double e = 0.5 * i / (grid - 1);
        for (int j = 0; j < grid; ++j) {
            for (int k = 0; k < grid; ++k) {
                const CanonicalAngles a{kHalfPi * j / (grid - 1), kHalfPi * k / (grid - 1)};
                const double closed = f1_closed_form(e, std::clamp(a.delta(), 0.0, 1.0));
                const double numeric = maximize_numeric(e, a, restarts, seed).value;
                dev = std::max(dev, std::abs(closed - numeric));
            }
        }
    }
    return {"f1", {upper_check("closed_vs_numeric", dev, 1e-6)}};
}

inline SuiteResult verify_jm(std::uint64_t seed, int pairs = 200) {
    std::mt19937_64 rng(splitmix64(seed + 0x6a6dULL));
    int tested = 0;
    int disagreements = 0;
    double worst_defect = 0.0;
    while (tested < pairs) {
        const BlochVector n1 = random_axis(rng);
        const BlochVector n2 = random_axis(rng);
        const double l1 = unit_uniform(rng);
        const double l2 = unit_uniform(rng);
        const BinaryPovm p = noisy_pauli_povm(n1, l1);
        const BinaryPovm q = noisy_pauli_povm(n2, l2);
        const JmVerdict analytic = busch_compatible(p, q);
        if (std::abs(analytic.margin) < 5e-3) {
            continue;
        }
        ++tested;
        const JmVerdict numeric = parent_povm_search(p, q);
        if (numeric.status != analytic.status) {
            ++disagreements;
        }
        if (numeric.parent) {
            worst_defect = std::max(worst_defect, parent_defect(p, q, *numeric.parent));
        }
    }
    SuiteResult r{"jm", {}};
    r.checks.push_back(upper_check("analytic_vs_feasibility_disagreements", disagreements, 0.0));
    r.checks.push_back(upper_check("parent_defect", worst_defect, 1e-8));
    return r;
}

/// The noisy Pauli family: Alice along ẑ, x̂; Bob along (ẑ ± x̂)/√2.
inline PovmSetting noisy_family(double lambda) {
    const double h = 1.0 / std::numbers::sqrt2;
    return {
        {noisy_pauli_povm(BlochVector::unit_z(), lambda), noisy_pauli_povm(BlochVector::unit_x(), lambda)},
        {noisy_pauli_povm({h, 0.0, h}, lambda), noisy_pauli_povm({-h, 0.0, h}, lambda)},
    };
}

inline SuiteResult verify_window(std::uint64_t) {
    double max_dev = 0.0;
    for (int i = 0; i <= 10; ++i) {
        const double lambda = 0.1 * i;
        const double expected = 2.0 * std::numbers::sqrt2 * lambda * lambda;
        max_dev = std::max(max_dev, std::abs(max_over_states(noisy_family(lambda).observables()).value - expected));
    }
    const double threshold = sharpness_threshold(BlochVector::unit_z(), BlochVector::unit_x(), 1e-12);
    const double window_top = std::pow(2.0, -0.25);
    // Interior point of (1/√2, 2^(-1/4)]: incompatible yet no state violates.
    const double probe = 0.5 * (threshold + window_top);
    const PovmSetting family = noisy_family(probe);
    const bool incompatible = busch_compatible(family.alice[0], family.alice[1]).status == JmStatus::Incompatible &&
                              busch_compatible(family.bob[0], family.bob[1]).status == JmStatus::Incompatible &&
                              parent_povm_search(family.alice[0], family.alice[1]).status == JmStatus::Incompatible;
    const double best = max_over_states(family.observables()).value;
    SuiteResult r{"window", {}};
    r.checks.push_back(upper_check("max_over_states_vs_closed_form", max_dev, 1e-9));
    r.checks.push_back(upper_check("threshold_vs_inverse_sqrt2", std::abs(threshold - 1.0 / std::numbers::sqrt2), 1e-6));
    r.checks.push_back({"window_incompatible_without_violation", incompatible && best <= 2.0, best, 2.0});
    return r;
}

inline SuiteResult verify_stationarity(std::uint64_t, int grid = 100) {
    constexpr double kHalfPi = std::numbers::pi / 2;
    double unit_dev = 0.0;
    double value_dev = 0.0;
    for (int i = 0; i < grid; ++i) {
        for (int j = 0; j < grid; ++j) {
            const CanonicalAngles a{kHalfPi * i / (grid - 1), kHalfPi * j / (grid - 1)};
            const double delta = a.delta();
            if (delta > 1.0 - 1e-9) {
                continue;
            }
            const StationaryAngles st = stationary_solution(a);
            unit_dev = std::max(unit_dev, std::abs(st.sin_sum * st.sin_sum + st.cos_sum * st.cos_sum - 1.0));
            unit_dev = std::max(unit_dev, std::abs(st.sin_diff * st.sin_diff + st.cos_diff * st.cos_diff - 1.0));
            if (delta < 1.0 - 1e-6) {
                for (double e : {0.0, 0.1, 0.25, 0.5}) {
                    const double f = objective_F(e, a, {0.0, 0.0, st.theta1()}, {0.0, 0.0, st.theta2()});
                    value_dev = std::max(value_dev, std::abs(f - f1_closed_form(e, delta)));
                }
            }
        }
    }
    SuiteResult r{"stationarity", {}};
    r.checks.push_back(upper_check("unit_circle", unit_dev, 1e-10));
    r.checks.push_back(upper_check("objective_at_stationary_point", value_dev, 1e-9));
    return r;
}

inline SuiteResult verify_corollaries(std::uint64_t) {
    const double t = entanglement_threshold();
    bool all_nonlocal = true;
    for (int i = 1; i <= 1000; ++i) {
        all_nonlocal = all_nonlocal && nonlocality_region(t + 1e-3, i / 1000.0);
    }
    SuiteResult r{"corollaries", {}};
    r.checks.push_back(upper_check("threshold_boundary", std::abs(f1_closed_form(t, 1.0) - 2.0), 1e-10));
    r.checks.push_back({"nonlocal_above_threshold", all_nonlocal, 0.0, 0.0});
    r.checks.push_back({"below_threshold_local_at_full_incompatibility", !nonlocality_region(t - 1e-3, 1.0), 0.0, 0.0});
    r.checks.push_back({"monotone_at_maximal_entanglement",
                        monotonicity_check(0.5, 10000).kind == Monotonicity::Monotone, 0.0, 0.0});
    r.checks.push_back({"non_monotone_at_quarter",
                        monotonicity_check(0.25, 10000).kind == Monotonicity::NonMonotone, 0.0, 0.0});
    return r;
}

}  // namespace detail

/// Runs one named suite; throws OutOfRange for unknown names.
inline SuiteResult run_suite(const std::string &name, std::uint64_t seed) {
    if (name == "landau") {
        return detail::verify_landau(seed);
    }
    if (name == "f1") {
        return detail::verify_f1(seed);
    }
    if (name == "jm") {
        return detail::verify_jm(seed);
    }
    if (name == "window") {
        return detail::verify_window(seed);
    }
    if (name == "stationarity") {
        return detail::verify_stationarity(seed);
    }
    if (name == "corollaries") {
        return detail::verify_corollaries(seed);
    }
    throw Error(ErrorCode::OutOfRange, "unknown verification suite '" + name + "'");
}

}  // namespace bellcompat
