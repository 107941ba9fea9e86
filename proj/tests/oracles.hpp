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
 * Test-only reference computations. Nothing here calls apply_gate,
 * controlled() or oracle_effect, so the tests that compare against these
 * routines are checking two independent paths.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "telegate/gate.hpp"
#include "telegate/statevector.hpp"

namespace telegate::testing {

inline Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.dim() * b.dim());
    for (std::size_t ar = 0; ar < a.dim(); ++ar) {
        for (std::size_t ac = 0; ac < a.dim(); ++ac) {
            for (std::size_t br = 0; br < b.dim(); ++br) {
                for (std::size_t bc = 0; bc < b.dim(); ++bc) {
                    out(ar * b.dim() + br, ac * b.dim() + bc) = a(ar, ac) * b(br, bc);
                }
            }
        }
    }
    return out;
}

/// Permutation matrix sending qubit order so that qubit order[t] lands at position t.
inline Matrix reorder_matrix(int n, const std::vector<int> &order) {
    const std::size_t dim = std::size_t{1} << n;
    Matrix p(dim);
    for (std::size_t idx = 0; idx < dim; ++idx) {
        std::size_t out = 0;
        for (int t = 0; t < n; ++t) {
            const std::size_t bit = (idx >> (n - 1 - order[t])) & 1U;
            out |= bit << (n - 1 - t);
        }
        p(out, idx) = 1.0;
    }
    return p;
}

/// Full 2^n operator for `g` on `targets`: P† (g ⊗ I) P.
inline Matrix full_operator(int n, const Matrix &g, const std::vector<int> &targets) {
    std::vector<int> order = targets;
    for (int q = 0; q < n; ++q) {
        bool used = false;
        for (int t : targets) {
            used = used || t == q;
        }
        if (!used) {
            order.push_back(q);
        }
    }
    const auto rest = static_cast<int>(n - targets.size());
    Matrix embedded = rest > 0 ? kron(g, Matrix::identity(std::size_t{1} << rest)) : g;
    const Matrix p = reorder_matrix(n, order);
    return p.adjoint() * embedded * p;
}

inline std::vector<Complex> matvec(const Matrix &m, std::span<const Complex> v) {
    std::vector<Complex> out(m.dim());
    for (std::size_t r = 0; r < m.dim(); ++r) {
        for (std::size_t c = 0; c < m.dim(); ++c) {
            out[r] += m(r, c) * v[c];
        }
    }
    return out;
}

inline double max_diff(std::span<const Complex> a, std::span<const Complex> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

/// Tr(ρ_q²) for the reduced state of one qubit.
inline double reduced_purity(const StateVector &s, int q) {
    const int n = s.num_qubits();
    const std::size_t mask = std::size_t{1} << (n - 1 - q);
    Complex rho[2][2] = {{0.0, 0.0}, {0.0, 0.0}};
    for (std::size_t i = 0; i < s.dim(); ++i) {
        for (int b = 0; b < 2; ++b) {
            const std::size_t j = b == 0 ? (i & ~mask) : (i | mask);
            const int a = (i & mask) != 0 ? 1 : 0;
            if ((j & ~mask) == (i & ~mask)) {
                rho[a][b] += s[i] * std::conj(s[j]);
            }
        }
    }
    double purity = 0.0;
    for (auto &row : rho) {
        for (auto &e : row) {
            purity += std::norm(e);
        }
    }
    return purity;
}

/// Textbook 8×8 Toffoli on |c1 c2 t⟩.
inline Matrix toffoli_matrix() {
    Matrix m = Matrix::identity(8);
    m(6, 6) = 0.0;
    m(7, 7) = 0.0;
    m(6, 7) = 1.0;
    m(7, 6) = 1.0;
    return m;
}

/// Haar-ish dim × dim unitary by Gram-Schmidt on Gaussian columns.
inline Matrix random_unitary_matrix(std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<std::vector<Complex>> cols(dim, std::vector<Complex>(dim));
    for (auto &col : cols) {
        for (auto &z : col) {
            const double re = normal(rng);
            const double im = normal(rng);
            z = {re, im};
        }
    }
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t p = 0; p < c; ++p) {
            Complex overlap = 0.0;
            for (std::size_t r = 0; r < dim; ++r) {
                overlap += std::conj(cols[p][r]) * cols[c][r];
            }
            for (std::size_t r = 0; r < dim; ++r) {
                cols[c][r] -= overlap * cols[p][r];
            }
        }
        double norm = 0.0;
        for (const auto &z : cols[c]) {
            norm += std::norm(z);
        }
        for (auto &z : cols[c]) {
            z /= std::sqrt(norm);
        }
    }
    Matrix m(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            m(r, c) = cols[c][r];
        }
    }
    return m;
}

/// Unnormalized vector → StateVector.
inline StateVector state_of(int n, std::vector<Complex> amps) {
    return StateVector::normalized(n, std::move(amps));
}

} // namespace telegate::testing
