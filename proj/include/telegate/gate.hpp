// Copyright 2026 The telegate Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Dense square complex matrices and the Gate value type, with constructors
 * for the fixed gate set and seeded random unitaries / involutions.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "common.hpp"

namespace telegate {

/// Row-major dense square complex matrix.
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}
    Matrix(std::size_t dim, std::vector<Complex> row_major)
        : dim_(dim), data_(std::move(row_major)) {
        if (data_.size() != dim_ * dim_) {
            throw InvalidArgument("Matrix: expected " +
                                  std::to_string(dim_ * dim_) + " entries, got " +
                                  std::to_string(data_.size()));
        }
    }

    static Matrix identity(std::size_t dim) {
        Matrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] const std::vector<Complex> &data() const { return data_; }

    Complex &operator()(std::size_t r, std::size_t c) {
        return data_[r * dim_ + c];
    }
    const Complex &operator()(std::size_t r, std::size_t c) const {
        return data_[r * dim_ + c];
    }

    [[nodiscard]] Matrix adjoint() const {
        Matrix out(dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < dim_; ++c) {
                out(c, r) = std::conj((*this)(r, c));
            }
        }
        return out;
    }

    friend Matrix operator*(const Matrix &a, const Matrix &b) {
        if (a.dim_ != b.dim_) {
            throw InvalidArgument("Matrix product: dimension mismatch");
        }
        Matrix out(a.dim_);
        for (std::size_t r = 0; r < a.dim_; ++r) {
            for (std::size_t k = 0; k < a.dim_; ++k) {
                const Complex lhs = a(r, k);
                for (std::size_t c = 0; c < a.dim_; ++c) {
                    out(r, c) += lhs * b(k, c);
                }
            }
        }
        return out;
    }

    /// max_ij |a_ij - b_ij|
    friend double max_abs_diff(const Matrix &a, const Matrix &b) {
        if (a.dim_ != b.dim_) {
            throw InvalidArgument("max_abs_diff: dimension mismatch");
        }
        double worst = 0.0;
        for (std::size_t i = 0; i < a.data_.size(); ++i) {
            worst = std::max(worst, std::abs(a.data_[i] - b.data_[i]));
        }
        return worst;
    }

  private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

/// ‖M†M − I‖_max
inline double unitarity_residual(const Matrix &m) {
    return max_abs_diff(m.adjoint() * m, Matrix::identity(m.dim()));
}

/// ‖M² − I‖_max
inline double involution_residual(const Matrix &m) {
    return max_abs_diff(m * m, Matrix::identity(m.dim()));
}

/**
 * A unitary acting on `arity` qubits. The first target qubit is the most
 * significant bit of the matrix row/column index.
 */
class Gate {
  public:
    Gate(int arity, Matrix matrix, std::string label)
        : arity_(arity), matrix_(std::move(matrix)), label_(std::move(label)) {
        if (arity_ < 1 || arity_ > 20) {
            throw InvalidArgument("Gate: arity must be in [1, 20]");
        }
        if (matrix_.dim() != (std::size_t{1} << arity_)) {
            throw InvalidArgument("Gate '" + label_ + "': matrix dimension " +
                                  std::to_string(matrix_.dim()) +
                                  " does not match arity " +
                                  std::to_string(arity_));
        }
        const double residual = unitarity_residual(matrix_);
        if (!(residual < kTolerance)) {
            throw InvalidArgument("Gate '" + label_ +
                                  "': matrix is not unitary (residual " +
                                  std::to_string(residual) + ")");
        }
    }

    [[nodiscard]] int arity() const { return arity_; }
    [[nodiscard]] const Matrix &matrix() const { return matrix_; }
    [[nodiscard]] const std::string &label() const { return label_; }

  private:
    int arity_;
    Matrix matrix_;
    std::string label_;
};

struct GateFlags {
    bool unitary;
    bool involution;
};

inline GateFlags validate(const Matrix &m) {
    return {unitarity_residual(m) < kTolerance,
            involution_residual(m) < kTolerance};
}

inline GateFlags validate(const Gate &g) { return validate(g.matrix()); }

/// Residual of M² = I for a gate; certified iff residual < kTolerance.
struct InvolutionCertificate {
    Gate gate;
    double residual;

    [[nodiscard]] bool certified() const { return residual < kTolerance; }
};

inline InvolutionCertificate certify_involution(const Gate &g) {
    return {g, involution_residual(g.matrix())};
}

inline Gate identity_gate() {
    return {1, Matrix::identity(2), "I"};
}

inline Gate pauli_x() {
    return {1, Matrix(2, {0.0, 1.0, 1.0, 0.0}), "X"};
}

inline Gate pauli_z() {
    return {1, Matrix(2, {1.0, 0.0, 0.0, -1.0}), "Z"};
}

inline Gate hadamard() {
    const double h = 1.0 / std::sqrt(2.0);
    return {1, Matrix(2, {h, h, h, -h}), "H"};
}

/// Multi-controlled single-qubit gate; controls lead, the target is last.
inline Gate controlled(const Gate &u, int num_controls) {
    if (u.arity() != 1) {
        throw InvalidArgument("controlled: payload must act on one qubit, got arity " +
                              std::to_string(u.arity()));
    }
    if (num_controls < 1) {
        throw InvalidArgument("controlled: need at least one control");
    }
    const int arity = num_controls + 1;
    Matrix m = Matrix::identity(std::size_t{1} << arity);
    const std::size_t base = m.dim() - 2;
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            m(base + r, base + c) = u.matrix()(r, c);
        }
    }
    std::string label = num_controls == 1
                            ? "C-" + u.label()
                            : "C" + std::to_string(num_controls) + "-" + u.label();
    return {arity, std::move(m), std::move(label)};
}

inline Gate cnot() { return controlled(pauli_x(), 1); }

namespace detail {

/// Haar-distributed 2×2 unitary via Gram-Schmidt on a Ginibre matrix.
inline Matrix haar_unitary_2x2(std::mt19937_64 &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Complex col0[2];
    Complex col1[2];
    for (auto &z : col0) {
        z = {normal(rng), normal(rng)};
    }
    for (auto &z : col1) {
        z = {normal(rng), normal(rng)};
    }
    const double n0 = std::sqrt(std::norm(col0[0]) + std::norm(col0[1]));
    col0[0] /= n0;
    col0[1] /= n0;
    const Complex overlap = std::conj(col0[0]) * col1[0] + std::conj(col0[1]) * col1[1];
    col1[0] -= overlap * col0[0];
    col1[1] -= overlap * col0[1];
    const double n1 = std::sqrt(std::norm(col1[0]) + std::norm(col1[1]));
    col1[0] /= n1;
    col1[1] /= n1;
    return Matrix(2, {col0[0], col1[0], col0[1], col1[1]});
}

} // namespace detail

inline Gate random_unitary(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    return {1, detail::haar_unitary_2x2(rng), "randU:" + std::to_string(seed)};
}

/// V·diag(±1, ∓1)·V† for a seeded random unitary V. Never ±I.
inline Gate random_involution(std::uint64_t seed) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const Matrix v = detail::haar_unitary_2x2(rng);
    const double sign = (rng() & 1U) != 0 ? 1.0 : -1.0;
    const Matrix d(2, {sign, 0.0, 0.0, -sign});
    Matrix m = v * d * v.adjoint();
    // Symmetrize away rounding so M = M† holds to the last bit.
    const Matrix adj = m.adjoint();
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            m(r, c) = 0.5 * (m(r, c) + adj(r, c));
        }
    }
    return {1, std::move(m), "randH:" + std::to_string(seed)};
}

} // namespace telegate
