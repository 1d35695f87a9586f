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
 * Small dense complex matrices (qubit and two-qubit operators), Kronecker
 * products, a cyclic Jacobi Hermitian eigensolver and operator norms.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "bellcompat/error.hpp"

namespace bellcompat {

using Complex = std::complex<double>;

/// Row-major dense complex matrix. Sizes in this library never exceed 16.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;

    ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {
        if (rows == 0 || cols == 0) {
            throw Error(ErrorCode::DimensionMismatch, "matrix dimensions must be positive");
        }
    }

    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
        : rows_(rows), cols_(cols), entries_(std::move(entries)) {
        if (rows == 0 || cols == 0 || entries_.size() != rows * cols) {
            throw Error(
                ErrorCode::DimensionMismatch,
                "expected " + std::to_string(rows * cols) + " entries, got " + std::to_string(entries_.size()));
        }
    }

    /// Builds from nested row lists, e.g. {{0, 1}, {1, 0}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        if (rows_ == 0 || cols_ == 0) {
            throw Error(ErrorCode::DimensionMismatch, "matrix dimensions must be positive");
        }
        entries_.reserve(rows_ * cols_);
        for (const auto &row : rows) {
            if (row.size() != cols_) {
                throw Error(ErrorCode::DimensionMismatch, "ragged row list");
            }
            entries_.insert(entries_.end(), row.begin(), row.end());
        }
    }

    static ComplexMatrix identity(std::size_t n) {
        ComplexMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static ComplexMatrix zeros(std::size_t rows, std::size_t cols) {
        return ComplexMatrix(rows, cols);
    }

    /// Column vector from its components.
    static ComplexMatrix column(std::span<const Complex> values) {
        return ComplexMatrix(values.size(), 1, std::vector<Complex>(values.begin(), values.end()));
    }

    std::size_t rows() const noexcept {
        return rows_;
    }
    std::size_t cols() const noexcept {
        return cols_;
    }
    bool is_square() const noexcept {
        return rows_ == cols_;
    }

    Complex &operator()(std::size_t r, std::size_t c) {
        return entries_[r * cols_ + c];
    }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return entries_[r * cols_ + c];
    }

    std::span<const Complex> entries() const noexcept {
        return entries_;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    Complex trace() const {
        require_square("trace");
        Complex t = 0.0;
        for (std::size_t i = 0; i < rows_; ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    double frobenius_norm() const {
        double s = 0.0;
        for (const auto &z : entries_) {
            s += std::norm(z);
        }
        return std::sqrt(s);
    }

    /// (M + M†)/2.
    ComplexMatrix hermitian_part() const {
        require_square("hermitian_part");
        ComplexMatrix out(rows_, cols_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) {
                out(r, c) = 0.5 * ((*this)(r, c) + std::conj((*this)(c, r)));
            }
        }
        return out;
    }

    ComplexMatrix &operator+=(const ComplexMatrix &other) {
        require_same_shape(other);
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            entries_[i] += other.entries_[i];
        }
        return *this;
    }

    ComplexMatrix &operator-=(const ComplexMatrix &other) {
        require_same_shape(other);
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            entries_[i] -= other.entries_[i];
        }
        return *this;
    }

    ComplexMatrix &operator*=(Complex s) {
        for (auto &z : entries_) {
            z *= s;
        }
        return *this;
    }

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) {
        a += b;
        return a;
    }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) {
        a -= b;
        return a;
    }
    friend ComplexMatrix operator-(ComplexMatrix a) {
        a *= -1.0;
        return a;
    }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) {
        a *= s;
        return a;
    }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) {
        a *= s;
        return a;
    }
    friend ComplexMatrix operator*(double s, ComplexMatrix a) {
        a *= s;
        return a;
    }

    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
        if (a.cols_ != b.rows_) {
            throw Error(ErrorCode::DimensionMismatch, "inner dimensions differ in matrix product");
        }
        ComplexMatrix out(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const Complex ark = a(r, k);
                for (std::size_t c = 0; c < b.cols_; ++c) {
                    out(r, c) += ark * b(k, c);
                }
            }
        }
        return out;
    }

   private:
    void require_square(const char *op) const {
        if (!is_square()) {
            throw Error(ErrorCode::DimensionMismatch, std::string(op) + " needs a square matrix");
        }
    }
    void require_same_shape(const ComplexMatrix &other) const {
        if (rows_ != other.rows_ || cols_ != other.cols_) {
            throw Error(ErrorCode::DimensionMismatch, "matrix shapes differ");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

inline ComplexMatrix pauli_x() {
    return {{0.0, 1.0}, {1.0, 0.0}};
}
inline ComplexMatrix pauli_y() {
    return {{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}};
}
inline ComplexMatrix pauli_z() {
    return {{1.0, 0.0}, {0.0, -1.0}};
}

/// Largest entrywise modulus of a - b.
inline double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw Error(ErrorCode::DimensionMismatch, "matrix shapes differ");
    }
    double m = 0.0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) {
        m = std::max(m, std::abs(ea[i] - eb[i]));
    }
    return m;
}

/// Largest entrywise |M - M†|.
inline double hermiticity_defect(const ComplexMatrix &m) {
    if (!m.is_square()) {
        throw Error(ErrorCode::DimensionMismatch, "hermiticity needs a square matrix");
    }
    double d = 0.0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = r; c < m.cols(); ++c) {
            d = std::max(d, std::abs(m(r, c) - std::conj(m(c, r))));
        }
    }
    return d;
}

inline bool is_hermitian(const ComplexMatrix &m, double tol = 1e-10) {
    return m.is_square() && hermiticity_defect(m) <= tol;
}

inline ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ra = 0; ra < a.rows(); ++ra) {
        for (std::size_t ca = 0; ca < a.cols(); ++ca) {
            const Complex s = a(ra, ca);
            for (std::size_t rb = 0; rb < b.rows(); ++rb) {
                for (std::size_t cb = 0; cb < b.cols(); ++cb) {
                    out(ra * b.rows() + rb, ca * b.cols() + cb) = s * b(rb, cb);
                }
            }
        }
    }
    return out;
}

inline ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) {
    return a * b - b * a;
}

/// |v><v| for a column vector v.
inline ComplexMatrix outer(const ComplexMatrix &v) {
    return v * v.adjoint();
}

/// Eigen-decomposition of a Hermitian matrix. Eigenvalues ascend; column i of
/// `eigenvectors` is the unit eigenvector for eigenvalues[i].
struct Spectrum {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;

    ComplexMatrix vector(std::size_t i) const {
        ComplexMatrix v(eigenvectors.rows(), 1);
        for (std::size_t r = 0; r < eigenvectors.rows(); ++r) {
            v(r, 0) = eigenvectors(r, i);
        }
        return v;
    }

    double min() const {
        return eigenvalues.front();
    }
    double max() const {
        return eigenvalues.back();
    }
};

namespace detail {

inline double off_diagonal_norm(const ComplexMatrix &a) {
    double s = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            if (r != c) {
                s += std::norm(a(r, c));
            }
        }
    }
    return std::sqrt(s);
}

}  // namespace detail

/// Cyclic complex Jacobi eigensolver for Hermitian matrices of dimension <= 16.
///
/// Each rotation first removes the phase of a(p,q) and then applies the real
/// symmetric Jacobi rotation, so a(p,q) is annihilated exactly. Sweeps stop
/// once the off-diagonal Frobenius norm falls below 1e-12 (scaled by the
/// matrix norm when that exceeds one) or after 100 sweeps.
inline Spectrum eig_hermitian(const ComplexMatrix &m, double hermitian_tol = 1e-10) {
    if (!m.is_square() || m.rows() > 16) {
        throw Error(ErrorCode::DimensionMismatch, "eig_hermitian needs a square matrix of dimension <= 16");
    }
    const double defect = hermiticity_defect(m);
    if (defect > hermitian_tol) {
        throw Error(ErrorCode::NotHermitian, "matrix is not Hermitian (defect " + std::to_string(defect) + ")");
    }
    const std::size_t n = m.rows();
    ComplexMatrix a = m.hermitian_part();
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double tol = 1e-12 * std::max(1.0, a.frobenius_norm());

    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps && detail::off_diagonal_norm(a) > tol; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double g = std::abs(apq);
                if (g == 0.0) {
                    continue;
                }
                const Complex phase = apq / g;
                const double tau = (a(q, q).real() - a(p, p).real()) / (2.0 * g);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                // Unitary rotation J restricted to (p, q): [[c, s], [-s conj(e), c conj(e)]].
                const Complex jpp = c;
                const Complex jpq = s;
                const Complex jqp = -s * std::conj(phase);
                const Complex jqq = c * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * jpp + akq * jqp;
                    a(k, q) = akp * jpq + akq * jqq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
                    a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * jpp + vkq * jqp;
                    v(k, q) = vkp * jpq + vkq * jqq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    Spectrum out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.eigenvalues[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) {
            out.eigenvectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

/// Largest singular value. Hermitian input takes max|eigenvalue| directly.
inline double operator_norm(const ComplexMatrix &m) {
    if (m.is_square() && is_hermitian(m, 1e-12)) {
        const Spectrum s = eig_hermitian(m, 1e-12);
        return std::max(std::abs(s.min()), std::abs(s.max()));
    }
    const ComplexMatrix gram = (m.adjoint() * m).hermitian_part();
    const double top = eig_hermitian(gram).max();
    return std::sqrt(std::max(0.0, top));
}

}  // namespace bellcompat
