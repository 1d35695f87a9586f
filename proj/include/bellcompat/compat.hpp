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
 * Joint measurability of a pair of binary qubit POVMs.
 *
 * Two routes are provided. `busch_compatible` is the exact criterion for
 * unbiased pairs, |a+b| + |a-b| <= 2. `parent_povm_search` looks for an
 * explicit parent {G_ab} with Dykstra's alternating projections and works for
 * biased pairs as well, at the cost of only being able to report an
 * infeasible instance through a stalled residual.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "bellcompat/error.hpp"
#include "bellcompat/measurement.hpp"
#include "bellcompat/qmat.hpp"

namespace bellcompat {

enum class JmStatus { Compatible, Incompatible, Undecided };
enum class JmMethod { AnalyticUnbiased, Feasibility };

inline std::string_view to_string(JmStatus s) {
    switch (s) {
        case JmStatus::Compatible:
            return "Compatible";
        case JmStatus::Incompatible:
            return "Incompatible";
        case JmStatus::Undecided:
            return "Undecided";
    }
    return "Undecided";
}

inline std::string_view to_string(JmMethod m) {
    return m == JmMethod::AnalyticUnbiased ? "AnalyticUnbiased" : "Feasibility";
}

/// Joint POVM; g[a][b] with index 0 for outcome +1 and 1 for outcome -1.
struct ParentPovm {
    std::array<std::array<ComplexMatrix, 2>, 2> g;
    double residual = 0.0;
};

struct JmVerdict {
    JmStatus status = JmStatus::Undecided;
    std::optional<ParentPovm> parent;
    /// Signed slack: 2 - (|a+b| + |a-b|) for the analytic route, minus the
    /// final PSD residual for the feasibility route.
    double margin = 0.0;
    JmMethod method = JmMethod::AnalyticUnbiased;
    std::int64_t iterations = 0;
};

/// Exact test for unbiased pairs (I ± a·σ)/2, (I ± b·σ)/2.
inline JmVerdict busch_compatible(const BinaryPovm &p, const BinaryPovm &q) {
    if (std::abs(p.bias()) > 1e-9 || std::abs(q.bias()) > 1e-9) {
        throw Error(ErrorCode::NotUnbiased, "analytic criterion requires tr(E+) = 1 for both POVMs");
    }
    const BlochVector a = p.bloch_vector();
    const BlochVector b = q.bloch_vector();
    JmVerdict v;
    v.method = JmMethod::AnalyticUnbiased;
    v.margin = 2.0 - ((a + b).norm() + (a - b).norm());
    // 1e-12 absorbs rounding at the boundary, e.g. λ = 1/√2 on orthogonal axes.
    v.status = v.margin >= -1e-12 ? JmStatus::Compatible : JmStatus::Incompatible;
    return v;
}

namespace detail {

// A Hermitian 2x2 H is written as (h0 I + h·σ)/2, i.e. h0 = tr H, hi = tr(σi H).
// The map is a scaled isometry (|H|_F² = |h|²/2), so Euclidean projections in
// these coordinates are Frobenius projections of the matrices.
using Coords = std::array<double, 4>;

inline Coords to_coords(const ComplexMatrix &h) {
    return {
        h.trace().real(),
        (pauli_x() * h).trace().real(),
        (pauli_y() * h).trace().real(),
        (pauli_z() * h).trace().real(),
    };
}

inline ComplexMatrix from_coords(const Coords &x) {
    return 0.5 * (x[0] * ComplexMatrix::identity(2) + pauli_combination({x[1], x[2], x[3]}));
}

inline ComplexMatrix psd_part(const ComplexMatrix &h) {
    const Spectrum s = eig_hermitian(h.hermitian_part());
    ComplexMatrix out = ComplexMatrix::zeros(2, 2);
    for (std::size_t i = 0; i < 2; ++i) {
        if (s.eigenvalues[i] > 0.0) {
            out += s.eigenvalues[i] * outer(s.vector(i));
        }
    }
    return out;
}

/// Constraint k reads sign·G + offset ⪰ 0.
struct PsdConstraint {
    double sign;
    ComplexMatrix offset;

    ComplexMatrix value(const Coords &x) const {
        return sign * from_coords(x) + offset;
    }

    Coords project(const Coords &x) const {
        const ComplexMatrix clamped = psd_part(value(x));
        return to_coords(sign * (clamped - offset));
    }

    double violation(const Coords &x) const {
        return std::max(0.0, -eig_hermitian(value(x).hermitian_part()).min());
    }
};

}  // namespace detail

/// Builds {G++, M+ - G++, N+ - G++, I - M+ - N+ + G++} from a chosen G++.
inline ParentPovm parent_from_corner(const BinaryPovm &p, const BinaryPovm &q, const ComplexMatrix &g_pp) {
    ParentPovm out;
    out.g[0][0] = g_pp;
    out.g[0][1] = p.effect_plus() - g_pp;
    out.g[1][0] = q.effect_plus() - g_pp;
    out.g[1][1] = ComplexMatrix::identity(2) - p.effect_plus() - q.effect_plus() + g_pp;
    return out;
}

/// Worst violation among normalization, both marginals and positivity.
inline double parent_defect(const BinaryPovm &p, const BinaryPovm &q, const ParentPovm &parent) {
    double d = 0.0;
    ComplexMatrix total = ComplexMatrix::zeros(2, 2);
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            total += parent.g[a][b];
            d = std::max(d, hermiticity_defect(parent.g[a][b]));
            d = std::max(d, -eig_hermitian(parent.g[a][b].hermitian_part(), 1.0).min());
        }
    }
    d = std::max(d, max_abs_diff(total, ComplexMatrix::identity(2)));
    for (int a = 0; a < 2; ++a) {
        d = std::max(d, max_abs_diff(parent.g[a][0] + parent.g[a][1], p.effect(a == 0 ? 1 : -1)));
        d = std::max(d, max_abs_diff(parent.g[0][a] + parent.g[1][a], q.effect(a == 0 ? 1 : -1)));
    }
    return d;
}

/// Searches for a parent POVM of (p, q) with Dykstra's alternating projections.
///
/// The free variable is G++ in the Hermitian basis {I, σx, σy, σz}/2; the
/// other three parent effects are fixed by the marginals, so the feasible set
/// is the intersection of four PSD constraints. Returns Compatible once the
/// worst negative eigenvalue is <= tol, Incompatible once the residual has
/// stalled (relative change < 1e-12 across 500 iterations) above 10·tol, and
/// Undecided when max_iter runs out first.
inline JmVerdict parent_povm_search(
    const BinaryPovm &p, const BinaryPovm &q, double tol = 1e-9, std::int64_t max_iter = 200'000) {
    if (!(tol > 0.0)) {
        throw Error(ErrorCode::InvalidTolerance, "tolerance must be positive");
    }
    if (max_iter < 1) {
        throw Error(ErrorCode::InvalidTolerance, "max_iter must be at least 1");
    }
    using detail::Coords;
    const ComplexMatrix &mp = p.effect_plus();
    const ComplexMatrix &np = q.effect_plus();
    const std::array<detail::PsdConstraint, 4> constraints{{
        {1.0, ComplexMatrix::zeros(2, 2)},
        {-1.0, mp},
        {-1.0, np},
        {1.0, ComplexMatrix::identity(2) - mp - np},
    }};
    auto residual_of = [&](const Coords &x) {
        double r = 0.0;
        for (const auto &c : constraints) {
            r = std::max(r, c.violation(x));
        }
        return r;
    };

    Coords x{};
    std::array<Coords, 4> increments{};

    constexpr std::int64_t kPlateauWindow = 500;
    double residual = residual_of(x);
    double window_start = residual;
    std::int64_t iter = 0;
    JmVerdict v;
    v.method = JmMethod::Feasibility;
    v.status = JmStatus::Undecided;

    while (residual > tol && iter < max_iter) {
        for (std::size_t k = 0; k < constraints.size(); ++k) {
            Coords y;
            for (std::size_t i = 0; i < 4; ++i) {
                y[i] = x[i] + increments[k][i];
            }
            const Coords projected = constraints[k].project(y);
            for (std::size_t i = 0; i < 4; ++i) {
                increments[k][i] = y[i] - projected[i];
            }
            x = projected;
        }
        ++iter;
        residual = residual_of(x);
        if (iter % kPlateauWindow == 0) {
            const double change = std::abs(residual - window_start);
            if (residual > 10.0 * tol && change <= 1e-12 * std::max(window_start, 1e-300)) {
                v.status = JmStatus::Incompatible;
                break;
            }
            window_start = residual;
        }
    }

    v.iterations = iter;
    v.margin = -residual;
    if (residual <= tol) {
        v.status = JmStatus::Compatible;
        ParentPovm parent = parent_from_corner(p, q, detail::from_coords(x));
        parent.residual = residual;
        v.parent = std::move(parent);
    }
    return v;
}

/// Largest λ for which the noisy Pauli pair along (n1, n2) is compatible,
/// located by bisection on [0, 1] with the analytic criterion as oracle.
inline double sharpness_threshold(const BlochVector &n1, const BlochVector &n2, double tol = 1e-12) {
    if (!(tol > 0.0)) {
        throw Error(ErrorCode::InvalidTolerance, "tolerance must be positive");
    }
    require_unit(n1);
    require_unit(n2);
    auto compatible = [&](double lambda) {
        return busch_compatible(noisy_pauli_povm(n1, lambda), noisy_pauli_povm(n2, lambda)).status ==
               JmStatus::Compatible;
    };
    if (compatible(1.0)) {
        return 1.0;
    }
    double lo = 0.0;
    double hi = 1.0;
    for (int i = 0; i < 60 && hi - lo >= 0.5 * tol; ++i) {
        const double mid = 0.5 * (lo + hi);
        (compatible(mid) ? lo : hi) = mid;
    }
    return lo;
}

}  // namespace bellcompat
