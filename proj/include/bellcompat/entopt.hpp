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
 * Maximal CHSH value of a pure two-qubit state with fixed entanglement E
 * under projective settings with fixed incompatibility Δ.
 *
 * The state is √E|00> + √(1-E)|11> up to local unitaries, the settings are
 * the canonical pair (â0 = ẑ, â1 = ẑcosφ + x̂sinφ, b̂0,1 = ẑcos(θ/2) ± x̂sin(θ/2)),
 * and the maximum over local unitaries is
 *
 *     F1 = (2 - X)√(1 + Δ) + X√(1 - Δ),   X = 1 - 2√(E(1 - E)),   Δ = sinθ sinφ.
 *
 * `maximize_numeric` reaches the same value by multistart Nelder-Mead over
 * the six Euler angles of U1 ⊗ U2 and is used to cross-check the closed form.
 */

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "bellcompat/chsh.hpp"
#include "bellcompat/error.hpp"
#include "bellcompat/measurement.hpp"
#include "bellcompat/nelder_mead.hpp"
#include "bellcompat/qmat.hpp"

namespace bellcompat {

inline void require_entanglement(double e) {
    if (!(e >= 0.0 && e <= 0.5)) {
        throw Error(ErrorCode::OutOfRange, "entanglement parameter E must lie in [0, 1/2]");
    }
}

/// √E|00> + √(1-E)|11>.
struct SchmidtState {
    double e = 0.5;
    std::array<Complex, 4> vector{};

    ComplexMatrix column() const {
        return ComplexMatrix::column(vector);
    }
    DensityMatrix density() const {
        return DensityMatrix::pure(column());
    }
};

inline SchmidtState schmidt_state(double e) {
    require_entanglement(e);
    return {e, {std::sqrt(e), 0.0, 0.0, std::sqrt(1.0 - e)}};
}

/// Euler-style parameters of one local unitary.
struct UnitaryParams {
    double psi = 0.0;
    double phi = 0.0;
    double theta = 0.0;
};

struct CanonicalAngles {
    double theta = 0.0;  // Bob's spread
    double phi = 0.0;    // Alice's spread

    double delta() const {
        return std::sin(theta) * std::sin(phi);
    }
};

inline void require_canonical(const CanonicalAngles &a) {
    constexpr double kHalfPi = std::numbers::pi / 2;
    // Slack admits pi/2 typed as 1.5708.
    if (!(a.theta >= 0.0 && a.theta <= kHalfPi + 1e-4 && a.phi >= 0.0 && a.phi <= kHalfPi + 1e-4)) {
        throw Error(ErrorCode::OutOfRange, "canonical angles must lie in [0, pi/2]");
    }
}

inline ChshSetting canonical_setting(const CanonicalAngles &a) {
    require_canonical(a);
    const double half = 0.5 * a.theta;
    return ChshSetting::from_axes(
        {0.0, 0.0, 1.0},
        {std::sin(a.phi), 0.0, std::cos(a.phi)},
        {std::sin(half), 0.0, std::cos(half)},
        {-std::sin(half), 0.0, std::cos(half)});
}

/// [[cos(θ/2)e^{i(ψ+φ)/2},  sin(θ/2)e^{-i(ψ-φ)/2}],
///  [-sin(θ/2)e^{i(ψ-φ)/2}, cos(θ/2)e^{-i(ψ+φ)/2}]]
inline ComplexMatrix local_unitary(const UnitaryParams &p) {
    const double c = std::cos(0.5 * p.theta);
    const double s = std::sin(0.5 * p.theta);
    const Complex sum_phase = std::polar(1.0, 0.5 * (p.psi + p.phi));
    const Complex diff_phase = std::polar(1.0, 0.5 * (p.psi - p.phi));
    return {{c * sum_phase, s * std::conj(diff_phase)}, {-s * diff_phase, c * std::conj(sum_phase)}};
}

/// F(U1, U2) = <ψ|(U1⊗U2)† S (U1⊗U2)|ψ> for fixed state and setting; S is
/// assembled once so repeated evaluation inside the optimizer stays cheap.
class ChshObjective {
   public:
    ChshObjective(double e, const CanonicalAngles &angles)
        : state_(schmidt_state(e)), chsh_(chsh_operator(canonical_setting(angles))) {
    }

    Complex evaluate_complex(const UnitaryParams &p1, const UnitaryParams &p2) const {
        const ComplexMatrix u = kron(local_unitary(p1), local_unitary(p2));
        const ComplexMatrix w = u * state_.column();
        return (w.adjoint() * chsh_ * w)(0, 0);
    }

    double operator()(const UnitaryParams &p1, const UnitaryParams &p2) const {
        const Complex v = evaluate_complex(p1, p2);
        if (std::abs(v.imag()) > 1e-8) {
            throw Error(ErrorCode::NonRealTrace, "objective trace has imaginary part " + std::to_string(v.imag()));
        }
        return v.real();
    }

   private:
    SchmidtState state_;
    ComplexMatrix chsh_;
};

inline double objective_F(double e, const CanonicalAngles &a, const UnitaryParams &p1, const UnitaryParams &p2) {
    return ChshObjective(e, a)(p1, p2);
}

struct NumericMaximum {
    double value = 0.0;
    UnitaryParams u1;
    UnitaryParams u2;
    int best_restart = 0;
};

/// Multistart Nelder-Mead over (ψ1, φ1, θ1, ψ2, φ2, θ2). Restart i starts
/// from a point drawn uniformly in [0,4π)×[0,2π]×[0,π] per unitary by an
/// mt19937_64 seeded from (seed, i); ties keep the lowest restart index.
inline NumericMaximum maximize_numeric(double e, const CanonicalAngles &a, int restarts = 20, std::uint64_t seed = 0) {
    if (restarts < 1) {
        throw Error(ErrorCode::OutOfRange, "restarts must be at least 1");
    }
    const ChshObjective objective(e, a);
    auto negated = [&](const std::array<double, 6> &x) {
        return -objective({x[0], x[1], x[2]}, {x[3], x[4], x[5]});
    };
    constexpr double kPi = std::numbers::pi;

    NumericMaximum best;
    best.value = -std::numeric_limits<double>::infinity();
    for (int r = 0; r < restarts; ++r) {
        std::mt19937_64 rng(detail::splitmix64(seed ^ (0x5bd1e995ULL * static_cast<std::uint64_t>(r + 1))));
        std::array<double, 6> start;
        for (int k = 0; k < 2; ++k) {
            start[3 * k + 0] = 4.0 * kPi * detail::unit_uniform(rng);
            start[3 * k + 1] = 2.0 * kPi * detail::unit_uniform(rng);
            start[3 * k + 2] = kPi * detail::unit_uniform(rng);
        }
        // A second pass from the converged vertex recovers the precision a
        // collapsed simplex can lose.
        NelderMeadResult<6> run = nelder_mead_minimize(negated, start);
        run = nelder_mead_minimize(negated, run.x, {0.05, 1e-9, 5000});
        if (-run.f > best.value) {
            best.value = -run.f;
            best.u1 = {run.x[0], run.x[1], run.x[2]};
            best.u2 = {run.x[3], run.x[4], run.x[5]};
            best.best_restart = r;
        }
    }
    return best;
}

inline void require_delta(double delta) {
    if (!(delta >= 0.0 && delta <= 1.0)) {
        throw Error(ErrorCode::OutOfRange, "incompatibility degree must lie in [0, 1]");
    }
}

/// X = 1 - 2√(E(1-E)).
inline double entanglement_weight(double e) {
    require_entanglement(e);
    return 1.0 - 2.0 * std::sqrt(e * (1.0 - e));
}

inline double f1_closed_form(double e, double delta) {
    require_entanglement(e);
    require_delta(delta);
    const double up = std::sqrt(1.0 + delta);
    const double down = std::sqrt(1.0 - delta);
    // (2-X)·up + X·down rearranged so that Δ = 0 yields exactly 2.
    return up + down + 2.0 * std::sqrt(e * (1.0 - e)) * (up - down);
}

struct StationaryAngles {
    double theta_sum = 0.0;   // θ1 + θ2
    double theta_diff = 0.0;  // θ1 - θ2
    double sin_sum = 0.0;
    double cos_sum = 0.0;
    double sin_diff = 0.0;
    double cos_diff = 0.0;

    /// Individual angles implied by the two combinations.
    double theta1() const {
        return 0.5 * (theta_sum + theta_diff);
    }
    double theta2() const {
        return 0.5 * (theta_sum - theta_diff);
    }
};

/// Stationary point of F in θ1 ± θ2 with φ1 = φ2 = 0 and ψ1 + ψ2 = 0.
inline StationaryAngles stationary_solution(const CanonicalAngles &a) {
    require_canonical(a);
    const double delta = a.delta();
    if (1.0 - delta < 1e-12) {
        throw Error(ErrorCode::DegenerateDelta, "stationary angles are undefined at incompatibility 1");
    }
    const double sh = std::sin(0.5 * a.theta);
    const double ch = std::cos(0.5 * a.theta);
    const double minus = std::sqrt(1.0 - delta);
    const double plus = std::sqrt(1.0 + delta);
    StationaryAngles out;
    out.sin_sum = -sh * std::cos(a.phi) / minus;
    out.cos_sum = (ch - sh * std::sin(a.phi)) / minus;
    out.sin_diff = sh * std::cos(a.phi) / plus;
    out.cos_diff = (ch + sh * std::sin(a.phi)) / plus;
    out.theta_sum = std::atan2(out.sin_sum, out.cos_sum);
    out.theta_diff = std::atan2(out.sin_diff, out.cos_diff);
    return out;
}

inline bool nonlocality_region(double e, double delta) {
    return f1_closed_form(e, delta) > 2.0 + 1e-12;
}

/// Smallest E above which every Δ in (0, 1] violates: ½(1 - √(2√2 - 2)).
inline double entanglement_threshold() {
    return 0.5 * (1.0 - std::sqrt(2.0 * std::numbers::sqrt2 - 2.0));
}

enum class Monotonicity { Monotone, NonMonotone };
enum class Trend { Increasing, Decreasing, Constant };

struct MonotonicityReport {
    Monotonicity kind = Monotonicity::Monotone;
    Trend trend = Trend::Constant;
    /// Grid Δ of the first interior extremum when non-monotone.
    std::optional<double> extremum_delta;
    std::optional<double> extremum_value;
    int sign_changes = 0;
};

inline std::string_view to_string(Monotonicity m) {
    return m == Monotonicity::Monotone ? "Monotone" : "NonMonotone";
}

inline std::string_view to_string(Trend t) {
    switch (t) {
        case Trend::Increasing:
            return "Increasing";
        case Trend::Decreasing:
            return "Decreasing";
        case Trend::Constant:
            return "Constant";
    }
    return "Constant";
}

/// Scans F1(e, Δ) on a uniform grid of `grid` points over [0, 1] and counts
/// sign changes of successive differences (differences below 1e-14 ignored).
inline MonotonicityReport monotonicity_check(double e, int grid) {
    require_entanglement(e);
    if (grid < 3) {
        throw Error(ErrorCode::OutOfRange, "grid must have at least 3 points");
    }
    std::vector<double> values(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i) {
        values[i] = f1_closed_form(e, static_cast<double>(i) / (grid - 1));
    }
    MonotonicityReport out;
    int last_sign = 0;
    int first_sign = 0;
    for (int i = 1; i < grid; ++i) {
        const double d = values[i] - values[i - 1];
        const int sign = d > 1e-14 ? 1 : (d < -1e-14 ? -1 : 0);
        if (sign == 0) {
            continue;
        }
        if (first_sign == 0) {
            first_sign = sign;
        }
        if (last_sign != 0 && sign != last_sign) {
            ++out.sign_changes;
            if (!out.extremum_delta) {
                out.extremum_delta = static_cast<double>(i - 1) / (grid - 1);
                out.extremum_value = values[i - 1];
            }
        }
        last_sign = sign;
    }
    out.kind = out.sign_changes == 0 ? Monotonicity::Monotone : Monotonicity::NonMonotone;
    if (out.kind == Monotonicity::Monotone) {
        out.trend = first_sign > 0 ? Trend::Increasing : (first_sign < 0 ? Trend::Decreasing : Trend::Constant);
    }
    return out;
}

}  // namespace bellcompat
