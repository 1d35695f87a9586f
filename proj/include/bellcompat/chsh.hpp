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
 * The CHSH operator S = A0⊗(B0 + B1) + A1⊗(B0 - B1), its spectral maxima,
 * Born-rule statistics and a seeded finite-shot estimator.
 */

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>

#include "bellcompat/error.hpp"
#include "bellcompat/measurement.hpp"
#include "bellcompat/qmat.hpp"

namespace bellcompat {

/// Validated two-qubit state: Hermitian, unit trace, PSD (all within 1e-10).
class DensityMatrix {
   public:
    explicit DensityMatrix(const ComplexMatrix &mat) {
        if (mat.rows() != 4 || mat.cols() != 4) {
            throw Error(ErrorCode::InvalidState, "two-qubit state must be 4x4");
        }
        if (!is_hermitian(mat, 1e-10)) {
            throw Error(ErrorCode::InvalidState, "state is not Hermitian");
        }
        mat_ = mat.hermitian_part();
        if (std::abs(mat_.trace() - Complex(1.0)) > 1e-10) {
            throw Error(ErrorCode::InvalidState, "state trace is not 1");
        }
        if (eig_hermitian(mat_).min() < -1e-10) {
            throw Error(ErrorCode::InvalidState, "state has a negative eigenvalue");
        }
    }

    /// |v><v| / <v|v> for a nonzero 4-component column.
    static DensityMatrix pure(const ComplexMatrix &v) {
        if (v.rows() != 4 || v.cols() != 1) {
            throw Error(ErrorCode::InvalidState, "pure state must be a 4-component column");
        }
        const double n2 = std::pow(v.frobenius_norm(), 2);
        if (n2 == 0.0) {
            throw Error(ErrorCode::InvalidState, "zero state vector");
        }
        return DensityMatrix((1.0 / n2) * outer(v));
    }

    static DensityMatrix maximally_mixed() {
        return DensityMatrix(0.25 * ComplexMatrix::identity(4));
    }

    /// (|00> + |11>)/√2.
    static DensityMatrix phi_plus() {
        const double h = 1.0 / std::sqrt(2.0);
        const std::array<Complex, 4> v{h, 0.0, 0.0, h};
        return pure(ComplexMatrix::column(v));
    }

    const ComplexMatrix &matrix() const noexcept {
        return mat_;
    }

   private:
    ComplexMatrix mat_;
};

struct ChshReport {
    double value = 0.0;
    double bound = 0.0;
    double mu = 0.0;
    DensityMatrix optimal_state = DensityMatrix::maximally_mixed();
    bool violates = false;
};

inline ComplexMatrix chsh_operator(const ChshSetting &s) {
    return kron(s.a0, s.b0 + s.b1) + kron(s.a1, s.b0 - s.b1);
}

namespace detail {

/// Projector onto the eigenvector of S with largest |eigenvalue|; ties go to
/// the lowest index in ascending order.
inline std::pair<double, DensityMatrix> top_modulus(const Spectrum &spec) {
    double best = -1.0;
    for (double ev : spec.eigenvalues) {
        best = std::max(best, std::abs(ev));
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < spec.eigenvalues.size(); ++i) {
        if (std::abs(spec.eigenvalues[i]) >= best - 1e-12) {
            idx = i;
            break;
        }
    }
    return {best, DensityMatrix::pure(spec.vector(idx))};
}

}  // namespace detail

/// Spectral CHSH maximum ‖S‖ = 2√(1 + μ), μ the top eigenvalue of
/// J = ¼[A0, A1]⊗[B0, B1]. Only valid when every observable squares to I.
inline ChshReport landau_bound(const ChshSetting &s) {
    if (!s.is_projective(1e-9)) {
        throw Error(ErrorCode::NotInvolutive, "landau_bound requires A² = B² = I for every observable");
    }
    ChshReport r;
    r.mu = eig_hermitian(commutator_product(s)).max();
    r.bound = 2.0 * std::sqrt(std::max(0.0, 1.0 + r.mu));
    r.value = r.bound;
    r.optimal_state = detail::top_modulus(eig_hermitian(chsh_operator(s))).second;
    r.violates = r.bound > 2.0 + 1e-9;
    return r;
}

/// max over all states of |<S>|, i.e. the largest |eigenvalue| of S.
inline ChshReport max_over_states(const ChshSetting &s) {
    ChshReport r;
    auto [value, state] = detail::top_modulus(eig_hermitian(chsh_operator(s)));
    r.value = value;
    r.bound = value;
    r.mu = eig_hermitian(commutator_product(s)).max();
    r.optimal_state = std::move(state);
    r.violates = value > 2.0 + 1e-9;
    return r;
}

/// Signed tr(ρS).
inline double chsh_expectation(const ChshSetting &s, const DensityMatrix &rho) {
    return (rho.matrix() * chsh_operator(s)).trace().real();
}

inline double chsh_value(const ChshSetting &s, const DensityMatrix &rho) {
    return std::abs(chsh_expectation(s, rho));
}

/// The two POVMs of each party, indexed by setting.
struct PovmSetting {
    std::array<BinaryPovm, 2> alice;
    std::array<BinaryPovm, 2> bob;

    ChshSetting observables() const {
        return ChshSetting::from_povms(alice[0], alice[1], bob[0], bob[1]);
    }
};

/// p(a, b | x, y) with outcome index 0 for +1 and 1 for -1.
struct BornTable {
    std::array<std::array<std::array<std::array<double, 2>, 2>, 2>, 2> p{};

    double operator()(int a, int b, int x, int y) const {
        return p[x][y][a > 0 ? 0 : 1][b > 0 ? 0 : 1];
    }

    /// <A_x B_y> = Σ ab p(a, b | x, y).
    double correlator(int x, int y) const {
        const auto &t = p[x][y];
        return t[0][0] - t[0][1] - t[1][0] + t[1][1];
    }

    /// E00 + E01 + E10 - E11.
    double chsh() const {
        return correlator(0, 0) + correlator(0, 1) + correlator(1, 0) - correlator(1, 1);
    }
};

inline BornTable born_table(
    const BinaryPovm &m0, const BinaryPovm &m1, const BinaryPovm &n0, const BinaryPovm &n1, const DensityMatrix &rho) {
    const std::array<const BinaryPovm *, 2> alice{&m0, &m1};
    const std::array<const BinaryPovm *, 2> bob{&n0, &n1};
    BornTable t;
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            for (int a = 0; a < 2; ++a) {
                for (int b = 0; b < 2; ++b) {
                    const ComplexMatrix joint = kron(alice[x]->effect(a == 0 ? 1 : -1), bob[y]->effect(b == 0 ? 1 : -1));
                    t.p[x][y][a][b] = (rho.matrix() * joint).trace().real();
                }
            }
        }
    }
    return t;
}

inline BornTable born_table(const PovmSetting &s, const DensityMatrix &rho) {
    return born_table(s.alice[0], s.alice[1], s.bob[0], s.bob[1], rho);
}

struct SampleEstimate {
    double value = 0.0;
    double standard_error = 0.0;
    std::array<std::array<double, 2>, 2> correlators{};
    std::array<std::array<std::int64_t, 4>, 4> counts{};
};

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double unit_uniform(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace detail

/// Draws `shots_per_pair` outcome pairs for each (x, y) from the Born table and
/// returns the plug-in CHSH estimate with its binomial standard error.
///
/// Each (x, y) stream is an mt19937_64 seeded with splitmix64(seed + 2x + y),
/// so results do not depend on evaluation order.
inline SampleEstimate sample_estimate(
    const PovmSetting &povms, const DensityMatrix &rho, std::int64_t shots_per_pair, std::uint64_t seed) {
    if (shots_per_pair < 1) {
        throw Error(ErrorCode::OutOfRange, "shots_per_pair must be at least 1");
    }
    const BornTable table = born_table(povms, rho);
    SampleEstimate out;
    double variance = 0.0;
    for (int x = 0; x < 2; ++x) {
        for (int y = 0; y < 2; ++y) {
            std::mt19937_64 rng(detail::splitmix64(seed + static_cast<std::uint64_t>(2 * x + y)));
            std::array<double, 4> cumulative{};
            double acc = 0.0;
            for (int k = 0; k < 4; ++k) {
                acc += std::max(0.0, table.p[x][y][k / 2][k % 2]);
                cumulative[k] = acc;
            }
            auto &counts = out.counts[2 * x + y];
            for (std::int64_t shot = 0; shot < shots_per_pair; ++shot) {
                const double u = detail::unit_uniform(rng) * acc;
                int k = 0;
                while (k < 3 && u >= cumulative[k]) {
                    ++k;
                }
                ++counts[k];
            }
            const double n = static_cast<double>(shots_per_pair);
            const double e = static_cast<double>(counts[0] - counts[1] - counts[2] + counts[3]) / n;
            out.correlators[x][y] = e;
            variance += (1.0 - e * e) / n;
        }
    }
    const auto &e = out.correlators;
    out.value = e[0][0] + e[0][1] + e[1][0] - e[1][1];
    out.standard_error = std::sqrt(variance);
    return out;
}

}  // namespace bellcompat
