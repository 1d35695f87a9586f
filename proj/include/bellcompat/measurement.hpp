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
 * Qubit observables, binary POVMs and the incompatibility degree of a
 * two-setting, two-party measurement configuration.
 */

#pragma once

#include <cmath>
#include <optional>
#include <string>

#include "bellcompat/error.hpp"
#include "bellcompat/qmat.hpp"

namespace bellcompat {

struct BlochVector {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const {
        return std::sqrt(x * x + y * y + z * z);
    }

    BlochVector operator+(const BlochVector &o) const {
        return {x + o.x, y + o.y, z + o.z};
    }
    BlochVector operator-(const BlochVector &o) const {
        return {x - o.x, y - o.y, z - o.z};
    }
    BlochVector operator*(double s) const {
        return {s * x, s * y, s * z};
    }

    static BlochVector unit_x() {
        return {1.0, 0.0, 0.0};
    }
    static BlochVector unit_y() {
        return {0.0, 1.0, 0.0};
    }
    static BlochVector unit_z() {
        return {0.0, 0.0, 1.0};
    }
};

/// v·σ without any normalization check.
inline ComplexMatrix pauli_combination(const BlochVector &v) {
    return v.x * pauli_x() + v.y * pauli_y() + v.z * pauli_z();
}

inline void require_unit(const BlochVector &n) {
    if (std::abs(n.norm() - 1.0) > 1e-9) {
        throw Error(ErrorCode::NonUnitAxis, "axis norm " + std::to_string(n.norm()) + " is not 1");
    }
}

/// n·σ for a unit axis n.
inline ComplexMatrix bloch_observable(const BlochVector &n) {
    require_unit(n);
    return pauli_combination(n);
}

/// Two-outcome qubit POVM {E+, E- = I - E+}.
class BinaryPovm {
   public:
    /// Validates E+ (Hermitian, 0 <= E+ <= I within 1e-12) after symmetrizing it.
    explicit BinaryPovm(const ComplexMatrix &effect_plus, std::optional<double> sharpness = std::nullopt)
        : sharpness_(sharpness) {
        if (effect_plus.rows() != 2 || effect_plus.cols() != 2) {
            throw Error(ErrorCode::DimensionMismatch, "qubit effect must be 2x2");
        }
        if (!is_hermitian(effect_plus, 1e-10)) {
            throw Error(ErrorCode::NotHermitian, "effect is not Hermitian");
        }
        effect_plus_ = effect_plus.hermitian_part();
        effect_minus_ = ComplexMatrix::identity(2) - effect_plus_;
        const double lo_plus = eig_hermitian(effect_plus_).min();
        const double lo_minus = eig_hermitian(effect_minus_).min();
        if (lo_plus < -1e-12 || lo_minus < -1e-12) {
            throw Error(ErrorCode::OutOfRange, "effects must be positive semidefinite");
        }
    }

    const ComplexMatrix &effect_plus() const noexcept {
        return effect_plus_;
    }
    const ComplexMatrix &effect_minus() const noexcept {
        return effect_minus_;
    }
    const ComplexMatrix &effect(int outcome) const noexcept {
        return outcome > 0 ? effect_plus_ : effect_minus_;
    }

    /// tr(E+) - 1; zero for unbiased POVMs.
    double bias() const {
        return effect_plus_.trace().real() - 1.0;
    }

    std::optional<double> sharpness() const noexcept {
        return sharpness_;
    }

    /// Dichotomic observable E+ - E-.
    ComplexMatrix observable() const {
        return effect_plus_ - effect_minus_;
    }

    /// Vector a with E+ - E- = bias·I + a·σ.
    BlochVector bloch_vector() const {
        const ComplexMatrix a = observable();
        return {
            0.5 * (pauli_x() * a).trace().real(),
            0.5 * (pauli_y() * a).trace().real(),
            0.5 * (pauli_z() * a).trace().real(),
        };
    }

   private:
    ComplexMatrix effect_plus_;
    ComplexMatrix effect_minus_;
    std::optional<double> sharpness_;
};

/// Effects (I ± λ n·σ)/2.
inline BinaryPovm noisy_pauli_povm(const BlochVector &n, double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw Error(ErrorCode::OutOfRange, "sharpness must lie in [0, 1]");
    }
    const ComplexMatrix plus = 0.5 * (ComplexMatrix::identity(2) + lambda * bloch_observable(n));
    return BinaryPovm(plus, lambda);
}

/// Alice's (a0, a1) and Bob's (b0, b1) dichotomic observables.
struct ChshSetting {
    ComplexMatrix a0;
    ComplexMatrix a1;
    ComplexMatrix b0;
    ComplexMatrix b1;

    static ChshSetting from_axes(
        const BlochVector &a0, const BlochVector &a1, const BlochVector &b0, const BlochVector &b1) {
        return {bloch_observable(a0), bloch_observable(a1), bloch_observable(b0), bloch_observable(b1)};
    }

    static ChshSetting from_povms(
        const BinaryPovm &m0, const BinaryPovm &m1, const BinaryPovm &n0, const BinaryPovm &n1) {
        return {m0.observable(), m1.observable(), n0.observable(), n1.observable()};
    }

    /// True when every observable squares to the identity within tol.
    bool is_projective(double tol = 1e-9) const {
        const ComplexMatrix id = ComplexMatrix::identity(2);
        for (const ComplexMatrix *m : {&a0, &a1, &b0, &b1}) {
            if (max_abs_diff(*m * *m, id) > tol) {
                return false;
            }
        }
        return true;
    }
};

/// ¼[A0, A1] ⊗ [B0, B1].
inline ComplexMatrix commutator_product(const ChshSetting &s) {
    return 0.25 * kron(commutator(s.a0, s.a1), commutator(s.b0, s.b1));
}

/// Δ = ¼‖[A0, A1] ⊗ [B0, B1]‖, evaluated on the assembled 4x4 operator.
inline double incompatibility_degree(const ChshSetting &s) {
    return operator_norm(commutator_product(s));
}

}  // namespace bellcompat
