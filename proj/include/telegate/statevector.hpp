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
 * Dense statevector engine. Qubit 0 is the leftmost symbol of a ket, i.e.
 * the most significant bit of the amplitude index: |q0 q1 ... q_{n-1}⟩.
 *
 * All operations are pure: they take a state and return a new one.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "common.hpp"
#include "gate.hpp"

namespace telegate {

/// Normalized amplitude vector over an ordered qubit register.
class StateVector {
  public:
    /// Takes ownership of `amplitudes`; they must already be normalized.
    StateVector(int num_qubits, std::vector<Complex> amplitudes)
        : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
        if (num_qubits_ < 1 || num_qubits_ > 30) {
            throw InvalidArgument("StateVector: num_qubits must be in [1, 30]");
        }
        if (amplitudes_.size() != (std::size_t{1} << num_qubits_)) {
            throw InvalidArgument("StateVector: expected 2^" +
                                  std::to_string(num_qubits_) + " amplitudes, got " +
                                  std::to_string(amplitudes_.size()));
        }
        if (std::abs(norm_squared() - 1.0) > kTolerance) {
            throw InvalidArgument("StateVector: amplitudes are not normalized (norm² = " +
                                  std::to_string(norm_squared()) + ")");
        }
    }

    /// Rescales `amplitudes` to unit norm first.
    static StateVector normalized(int num_qubits, std::vector<Complex> amplitudes) {
        double total = 0.0;
        for (const auto &a : amplitudes) {
            total += std::norm(a);
        }
        if (!(total > 0.0) || !std::isfinite(total)) {
            throw InvalidArgument("StateVector: cannot normalize a zero or non-finite vector");
        }
        const double scale = 1.0 / std::sqrt(total);
        for (auto &a : amplitudes) {
            a *= scale;
        }
        return {num_qubits, std::move(amplitudes)};
    }

    [[nodiscard]] int num_qubits() const { return num_qubits_; }
    [[nodiscard]] std::size_t dim() const { return amplitudes_.size(); }
    [[nodiscard]] std::span<const Complex> amplitudes() const { return amplitudes_; }
    [[nodiscard]] const Complex &operator[](std::size_t i) const { return amplitudes_[i]; }

    [[nodiscard]] double norm_squared() const {
        double total = 0.0;
        for (const auto &a : amplitudes_) {
            total += std::norm(a);
        }
        return total;
    }

  private:
    int num_qubits_;
    std::vector<Complex> amplitudes_;
};

enum class Basis { Computational, Hadamard };

inline std::string_view to_string(Basis b) {
    return b == Basis::Computational ? "computational" : "hadamard";
}

/// Outcome of projecting one qubit onto a basis vector.
/// Computational: |0⟩→0, |1⟩→1. Hadamard: |+⟩→0, |−⟩→1.
struct MeasurementRecord {
    int qubit;
    Basis basis;
    int outcome;
    double probability;
};

struct Projection {
    MeasurementRecord record;
    /// Renormalized post-measurement state; empty for an impossible branch.
    std::optional<StateVector> post;

    [[nodiscard]] bool possible() const { return post.has_value(); }
};

namespace detail {

inline std::size_t bit_mask(int num_qubits, int qubit) {
    return std::size_t{1} << (num_qubits - 1 - qubit);
}

inline void check_qubit(int num_qubits, int qubit, const char *what) {
    if (qubit < 0 || qubit >= num_qubits) {
        throw InvalidArgument(std::string(what) + ": qubit " + std::to_string(qubit) +
                              " out of range for " + std::to_string(num_qubits) +
                              "-qubit register");
    }
}

} // namespace detail

inline StateVector basis_state(int num_qubits, std::uint64_t index) {
    if (num_qubits < 1 || num_qubits > 30 || index >= (std::uint64_t{1} << num_qubits)) {
        throw InvalidArgument("basis_state: index out of range");
    }
    std::vector<Complex> amps(std::size_t{1} << num_qubits);
    amps[index] = 1.0;
    return {num_qubits, std::move(amps)};
}

/// `bits` is the ket label, leftmost character = qubit 0.
inline StateVector basis_state(int num_qubits, std::string_view bits) {
    if (bits.size() != static_cast<std::size_t>(num_qubits)) {
        throw InvalidArgument("basis_state: bitstring '" + std::string(bits) +
                              "' has length " + std::to_string(bits.size()) +
                              ", expected " + std::to_string(num_qubits));
    }
    std::uint64_t index = 0;
    for (char c : bits) {
        if (c != '0' && c != '1') {
            throw InvalidArgument("basis_state: bitstring must contain only 0 and 1");
        }
        index = (index << 1U) | static_cast<std::uint64_t>(c - '0');
    }
    return basis_state(num_qubits, index);
}

/// Kronecker product with a's qubits leftmost.
inline StateVector tensor(const StateVector &a, const StateVector &b) {
    std::vector<Complex> amps(a.dim() * b.dim());
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < b.dim(); ++j) {
            amps[i * b.dim() + j] = a[i] * b[j];
        }
    }
    return {a.num_qubits() + b.num_qubits(), std::move(amps)};
}

/// Source qubit i moves to position perm[i].
inline StateVector permute_qubits(const StateVector &s, std::span<const int> perm) {
    const int n = s.num_qubits();
    if (perm.size() != static_cast<std::size_t>(n)) {
        throw InvalidArgument("permute_qubits: permutation length mismatch");
    }
    std::vector<bool> seen(n, false);
    for (int p : perm) {
        if (p < 0 || p >= n || seen[p]) {
            throw InvalidArgument("permute_qubits: not a bijection");
        }
        seen[p] = true;
    }
    std::vector<Complex> amps(s.dim());
    for (std::size_t idx = 0; idx < s.dim(); ++idx) {
        std::size_t out = 0;
        for (int q = 0; q < n; ++q) {
            if ((idx & detail::bit_mask(n, q)) != 0) {
                out |= detail::bit_mask(n, perm[q]);
            }
        }
        amps[out] = s[idx];
    }
    return {n, std::move(amps)};
}

/// Applies g to `targets` (targets[0] = most significant bit of g's index).
inline StateVector apply_gate(const StateVector &s, const Gate &g,
                              std::span<const int> targets) {
    const int n = s.num_qubits();
    const auto k = static_cast<int>(targets.size());
    if (k != g.arity()) {
        throw InvalidArgument("apply_gate: gate '" + g.label() + "' has arity " +
                              std::to_string(g.arity()) + " but " + std::to_string(k) +
                              " targets were given");
    }
    std::size_t target_mask = 0;
    std::vector<std::size_t> masks(k);
    for (int t = 0; t < k; ++t) {
        detail::check_qubit(n, targets[t], "apply_gate");
        masks[t] = detail::bit_mask(n, targets[t]);
        if ((target_mask & masks[t]) != 0) {
            throw InvalidArgument("apply_gate: duplicate target qubit " +
                                  std::to_string(targets[t]));
        }
        target_mask |= masks[t];
    }

    // offsets[j] = index bits set by local basis state j of the gate.
    const std::size_t local_dim = std::size_t{1} << k;
    std::vector<std::size_t> offsets(local_dim, 0);
    for (std::size_t j = 0; j < local_dim; ++j) {
        for (int t = 0; t < k; ++t) {
            if ((j >> (k - 1 - t)) & 1U) {
                offsets[j] |= masks[t];
            }
        }
    }

    const Matrix &m = g.matrix();
    std::vector<Complex> out(s.amplitudes().begin(), s.amplitudes().end());
    std::vector<Complex> local(local_dim);
    for (std::size_t base = 0; base < s.dim(); ++base) {
        if ((base & target_mask) != 0) {
            continue;
        }
        for (std::size_t j = 0; j < local_dim; ++j) {
            local[j] = s[base | offsets[j]];
        }
        for (std::size_t r = 0; r < local_dim; ++r) {
            Complex acc = 0.0;
            for (std::size_t c = 0; c < local_dim; ++c) {
                const Complex &entry = m(r, c);
                if (entry != Complex{0.0, 0.0}) {
                    acc += entry * local[c];
                }
            }
            out[base | offsets[r]] = acc;
        }
    }
    return {n, std::move(out)};
}

inline StateVector apply_gate(const StateVector &s, const Gate &g,
                              std::initializer_list<int> targets) {
    return apply_gate(s, g, std::span<const int>(targets.begin(), targets.size()));
}

/// Projects qubit q onto the basis vector selected by `outcome`.
inline Projection project_measure(const StateVector &s, int q, Basis basis, int outcome) {
    const int n = s.num_qubits();
    detail::check_qubit(n, q, "project_measure");
    if (outcome != 0 && outcome != 1) {
        throw InvalidArgument("project_measure: outcome must be 0 or 1");
    }
    const std::size_t mask = detail::bit_mask(n, q);
    std::vector<Complex> amps(s.dim());
    double probability = 0.0;
    if (basis == Basis::Computational) {
        for (std::size_t idx = 0; idx < s.dim(); ++idx) {
            const int bit = (idx & mask) != 0 ? 1 : 0;
            if (bit == outcome) {
                amps[idx] = s[idx];
                probability += std::norm(s[idx]);
            }
        }
    } else {
        // |±⟩⟨±| acting on the (i0, i1) pair: a0' = (a0 ± a1)/2, a1' = ±a0'.
        const double sign = outcome == 0 ? 1.0 : -1.0;
        for (std::size_t i0 = 0; i0 < s.dim(); ++i0) {
            if ((i0 & mask) != 0) {
                continue;
            }
            const std::size_t i1 = i0 | mask;
            const Complex half = 0.5 * (s[i0] + sign * s[i1]);
            amps[i0] = half;
            amps[i1] = sign * half;
            probability += 2.0 * std::norm(half);
        }
    }
    MeasurementRecord record{q, basis, outcome, probability};
    if (probability < kImpossibleBranch) {
        return {record, std::nullopt};
    }
    return {record, StateVector::normalized(n, std::move(amps))};
}

/// Drops qubit q, which must be in a product state with the rest.
inline StateVector discard_qubit(const StateVector &s, int q) {
    const int n = s.num_qubits();
    detail::check_qubit(n, q, "discard_qubit");
    if (n == 1) {
        throw InvalidArgument("discard_qubit: cannot discard the last qubit");
    }
    const std::size_t mask = detail::bit_mask(n, q);
    const std::size_t low_mask = mask - 1;
    const std::size_t half = s.dim() / 2;
    std::vector<Complex> v0(half);
    std::vector<Complex> v1(half);
    double n0 = 0.0;
    double n1 = 0.0;
    for (std::size_t r = 0; r < half; ++r) {
        // Reinsert a zero bit at the position of q.
        const std::size_t i0 = ((r & ~low_mask) << 1U) | (r & low_mask);
        v0[r] = s[i0];
        v1[r] = s[i0 | mask];
        n0 += std::norm(v0[r]);
        n1 += std::norm(v1[r]);
    }
    // Prefer the |0⟩ component unless |1⟩ clearly dominates, so that ties
    // (Hadamard-basis posts) always resolve the same way.
    const bool keep_one = n1 > n0 + kImpossibleBranch;
    std::vector<Complex> &kept = keep_one ? v1 : v0;
    std::vector<Complex> &other = keep_one ? v0 : v1;
    const double kept_norm = keep_one ? n1 : n0;

    // other must equal c·kept for the qubit to factor out.
    Complex overlap = 0.0;
    for (std::size_t r = 0; r < half; ++r) {
        overlap += std::conj(kept[r]) * other[r];
    }
    const Complex c = overlap / kept_norm;
    double residual = 0.0;
    for (std::size_t r = 0; r < half; ++r) {
        residual = std::max(residual, std::abs(other[r] - c * kept[r]));
    }
    if (residual > kTolerance) {
        throw EntangledDiscard("discard_qubit: qubit " + std::to_string(q) +
                               " is entangled with the rest (residual " +
                               std::to_string(residual) + ")");
    }
    return StateVector::normalized(n - 1, std::move(kept));
}

inline Complex inner_product(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw InvalidArgument("inner_product: dimension mismatch");
    }
    Complex acc = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

/// |⟨a|b⟩|², insensitive to global phase.
inline double fidelity_up_to_phase(const StateVector &a, const StateVector &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw InvalidArgument("fidelity_up_to_phase: dimension mismatch (" +
                              std::to_string(a.num_qubits()) + " vs " +
                              std::to_string(b.num_qubits()) + " qubits)");
    }
    return std::min(1.0, std::norm(inner_product(a, b)));
}

/// Isotropic random state: i.i.d. complex Gaussians, normalized.
inline StateVector random_state(int num_qubits, std::uint64_t seed) {
    if (num_qubits < 1 || num_qubits > 30) {
        throw InvalidArgument("random_state: num_qubits must be in [1, 30]");
    }
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<Complex> amps(std::size_t{1} << num_qubits);
    for (auto &a : amps) {
        const double re = normal(rng);
        const double im = normal(rng);
        a = {re, im};
    }
    return StateVector::normalized(num_qubits, std::move(amps));
}

} // namespace telegate
