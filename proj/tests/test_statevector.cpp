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

#include <cmath>
#include <numbers>
#include <vector>

#include <catch_amalgamated.hpp>

#include "oracles.hpp"
#include "telegate/statevector.hpp"

using namespace telegate;
using namespace telegate::testing;
using Catch::Approx;

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

StateVector bell_pair() { return StateVector(2, {kInvSqrt2, 0.0, 0.0, kInvSqrt2}); }

StateVector plus_state() { return StateVector(1, {kInvSqrt2, kInvSqrt2}); }

} // namespace

TEST_CASE("basis_state encodes the ket label with qubit 0 leftmost", "[statevector]") {
    const auto s1 = basis_state(1, "0");
    CHECK(s1[0] == Complex{1.0});
    CHECK(s1[1] == Complex{0.0});

    const auto s2 = basis_state(2, "11");
    CHECK(s2.amplitudes().size() == 4);
    CHECK(s2[3] == Complex{1.0});
    CHECK(s2[0] == Complex{0.0});

    const auto s3 = basis_state(3, "010");
    for (std::size_t i = 0; i < 8; ++i) {
        CHECK(s3[i] == Complex{i == 2 ? 1.0 : 0.0});
    }

    CHECK_THROWS_AS(basis_state(3, "01"), InvalidArgument);
    CHECK_THROWS_AS(basis_state(2, "0x"), InvalidArgument);
}

TEST_CASE("tensor puts the left factor's qubits first", "[statevector]") {
    const auto s = tensor(basis_state(1, "0"), basis_state(1, "1"));
    CHECK(s.num_qubits() == 2);
    CHECK(s[1] == Complex{1.0});

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto t = tensor(random_state(2, seed), random_state(3, seed + 100));
        CHECK(t.num_qubits() == 5);
        CHECK(t.norm_squared() == Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("permute_qubits relabels and inverts", "[statevector]") {
    const auto s = random_state(3, 11);
    const std::vector<int> id{0, 1, 2};
    CHECK(max_diff(permute_qubits(s, id).amplitudes(), s.amplitudes()) == 0.0);

    const std::vector<int> swap{1, 0};
    const auto swapped = permute_qubits(basis_state(2, "01"), swap);
    CHECK(swapped[2] == Complex{1.0});

    const std::vector<int> perm{2, 0, 3, 1};
    const std::vector<int> inverse{1, 3, 0, 2};
    const auto r = random_state(4, 5);
    const auto back = permute_qubits(permute_qubits(r, perm), inverse);
    for (std::size_t i = 0; i < r.dim(); ++i) {
        CHECK(back[i] == r[i]);
    }

    const std::vector<int> bad{0, 0, 1};
    CHECK_THROWS_AS(permute_qubits(s, bad), InvalidArgument);
    const std::vector<int> short_perm{0, 1};
    CHECK_THROWS_AS(permute_qubits(s, short_perm), InvalidArgument);
}

TEST_CASE("apply_gate on basis states", "[statevector]") {
    const auto x = pauli_x();
    CHECK(apply_gate(basis_state(1, "0"), x, {0})[1] == Complex{1.0});
    CHECK(apply_gate(basis_state(2, "10"), cnot(), {0, 1})[3] == Complex{1.0});
    // Reversed target order: control is qubit 1.
    CHECK(apply_gate(basis_state(2, "01"), cnot(), {1, 0})[3] == Complex{1.0});

    CHECK_THROWS_AS(apply_gate(basis_state(2, "00"), cnot(), {0}), InvalidArgument);
    CHECK_THROWS_AS(apply_gate(basis_state(2, "00"), cnot(), {1, 1}), InvalidArgument);
    CHECK_THROWS_AS(apply_gate(basis_state(2, "00"), cnot(), {0, 2}), InvalidArgument);
}

TEST_CASE("CNOT onto one half of a Bell pair matches the hand expansion", "[statevector]") {
    // (α|0⟩+β|1⟩)_a ⊗ (|00⟩+|11⟩)_{AC}/√2, CNOT a→A
    //   = α|0⟩(|00⟩+|11⟩)/√2 + β|1⟩(|10⟩+|01⟩)/√2
    const Complex alpha{0.6, 0.0};
    const Complex beta{0.0, 0.8};
    const auto input = tensor(StateVector(1, {alpha, beta}), bell_pair());
    const auto out = apply_gate(input, cnot(), {0, 1});
    std::vector<Complex> expected(8);
    expected[0b000] = alpha * kInvSqrt2;
    expected[0b011] = alpha * kInvSqrt2;
    expected[0b110] = beta * kInvSqrt2;
    expected[0b101] = beta * kInvSqrt2;
    CHECK(max_diff(out.amplitudes(), expected) < 1e-15);
}

TEST_CASE("apply_gate agrees with explicit Kronecker-built operators for n <= 3",
          "[statevector][property]") {
    std::uint64_t seed = 1;
    for (int n = 1; n <= 3; ++n) {
        for (int arity = 1; arity <= n; ++arity) {
            for (int trial = 0; trial < 10; ++trial, ++seed) {
                const Matrix u = random_unitary_matrix(std::size_t{1} << arity, seed);
                const Gate g(arity, u, "rand");
                // Random distinct targets in random order.
                std::vector<int> qubits(n);
                for (int q = 0; q < n; ++q) {
                    qubits[q] = q;
                }
                std::mt19937_64 rng(seed);
                std::shuffle(qubits.begin(), qubits.end(), rng);
                qubits.resize(arity);

                const auto s = random_state(n, seed * 7);
                const auto got = apply_gate(s, g, qubits);
                const auto want = matvec(full_operator(n, u, qubits), s.amplitudes());
                CHECK(max_diff(got.amplitudes(), want) < 1e-12);
            }
        }
    }
}

TEST_CASE("unitary gate sequences preserve the norm", "[statevector][property]") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto s = random_state(5, seed);
        std::mt19937_64 rng(seed);
        for (int step = 0; step < 50; ++step) {
            const int a = static_cast<int>(rng() % 5);
            const int b = (a + 1 + static_cast<int>(rng() % 4)) % 5;
            if (step % 2 == 0) {
                s = apply_gate(s, random_unitary(rng()), {a});
            } else {
                s = apply_gate(s, controlled(random_unitary(rng()), 1), {a, b});
            }
            REQUIRE(std::abs(s.norm_squared() - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("identity gate is a bit-exact no-op", "[statevector][property]") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const auto s = random_state(4, seed);
        const auto out = apply_gate(s, identity_gate(), {static_cast<int>(seed % 4)});
        for (std::size_t i = 0; i < s.dim(); ++i) {
            CHECK(out[i] == s[i]);
        }
    }
}

TEST_CASE("project_measure in both bases", "[statevector]") {
    auto p = project_measure(bell_pair(), 0, Basis::Computational, 0);
    CHECK(p.record.probability == Approx(0.5).margin(1e-15));
    REQUIRE(p.possible());
    CHECK(fidelity_up_to_phase(*p.post, basis_state(2, "00")) == Approx(1.0).margin(1e-15));

    p = project_measure(plus_state(), 0, Basis::Hadamard, 0);
    CHECK(p.record.probability == Approx(1.0).margin(1e-15));
    CHECK(fidelity_up_to_phase(*p.post, plus_state()) == Approx(1.0).margin(1e-15));

    p = project_measure(plus_state(), 0, Basis::Hadamard, 1);
    CHECK_FALSE(p.possible());
    CHECK(p.record.probability < kImpossibleBranch);

    CHECK_THROWS_AS(project_measure(plus_state(), 1, Basis::Hadamard, 0), InvalidArgument);
}

TEST_CASE("measurement outcome probabilities sum to one", "[statevector][property]") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const auto s = random_state(4, seed);
        for (int q = 0; q < 4; ++q) {
            for (Basis b : {Basis::Computational, Basis::Hadamard}) {
                const double total = project_measure(s, q, b, 0).record.probability +
                                     project_measure(s, q, b, 1).record.probability;
                CHECK(std::abs(total - 1.0) < 1e-10);
            }
        }
    }
}

TEST_CASE("CNOTs onto Bell halves make the halves' outcomes uniform", "[statevector]") {
    // |ψ⟩_abc ⊗ Φ_{AC1} ⊗ Φ_{BC2} reordered to a A b B C1 C2 c, then CNOT a→A,
    // b→B. Oracle: ⟨ζ|P|ζ⟩ with P = |0⟩⟨0| on A built by Kronecker products.
    Matrix proj0(2);
    proj0(0, 0) = 1.0;
    const Matrix p_a = full_operator(7, proj0, {1});
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto joint = tensor(tensor(random_state(3, seed), bell_pair()), bell_pair());
        const std::vector<int> perm{0, 2, 6, 1, 4, 3, 5};
        auto zeta = permute_qubits(joint, perm);
        zeta = apply_gate(zeta, cnot(), {0, 1});
        zeta = apply_gate(zeta, cnot(), {2, 3});

        const auto projected = matvec(p_a, zeta.amplitudes());
        double oracle = 0.0;
        for (std::size_t i = 0; i < zeta.dim(); ++i) {
            oracle += std::real(std::conj(zeta[i]) * projected[i]);
        }
        CHECK(oracle == Approx(0.5).margin(1e-12));
        CHECK(project_measure(zeta, 1, Basis::Computational, 0).record.probability ==
              Approx(0.5).margin(1e-12));
        CHECK(project_measure(zeta, 1, Basis::Computational, 1).record.probability ==
              Approx(0.5).margin(1e-12));
    }
}

TEST_CASE("discard_qubit", "[statevector]") {
    const auto out = discard_qubit(tensor(basis_state(1, "0"), basis_state(1, "1")), 1);
    CHECK(out.num_qubits() == 1);
    CHECK(out[0] == Complex{1.0});

    CHECK_THROWS_AS(discard_qubit(bell_pair(), 0), EntangledDiscard);

    // Any just-measured qubit factors out.
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto s = random_state(4, seed);
        for (int q = 0; q < 4; ++q) {
            for (Basis b : {Basis::Computational, Basis::Hadamard}) {
                const auto p = project_measure(s, q, b, static_cast<int>(seed % 2));
                REQUIRE(p.possible());
                CHECK_NOTHROW(discard_qubit(*p.post, q));
            }
        }
    }
}

TEST_CASE("measure-then-discard commutes with permute_qubits", "[statevector][property]") {
    const std::vector<int> perm{3, 0, 2, 1};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto s = random_state(4, seed);
        const int q = static_cast<int>(seed % 4);
        const Basis b = seed % 3 == 0 ? Basis::Hadamard : Basis::Computational;
        const int outcome = static_cast<int>((seed / 2) % 2);

        const auto direct = discard_qubit(*project_measure(s, q, b, outcome).post, q);
        const auto moved = permute_qubits(s, perm);
        const auto via_perm = discard_qubit(*project_measure(moved, perm[q], b, outcome).post,
                                            perm[q]);
        // Induced map on the remaining three qubits.
        std::vector<int> reduced;
        for (int src = 0; src < 4; ++src) {
            if (src != q) {
                reduced.push_back(perm[src] - (perm[src] > perm[q] ? 1 : 0));
            }
        }
        const auto expected = permute_qubits(direct, reduced);
        CHECK(fidelity_up_to_phase(expected, via_perm) > 1.0 - 1e-12);
        CHECK(max_diff(expected.amplitudes(), via_perm.amplitudes()) < 1e-12);
    }
}

TEST_CASE("fidelity_up_to_phase ignores global phase", "[statevector]") {
    const auto s = random_state(3, 99);
    CHECK(fidelity_up_to_phase(s, s) == Approx(1.0).margin(1e-14));
    for (double theta : {0.3, 1.7, std::numbers::pi, -2.2}) {
        std::vector<Complex> rotated(s.amplitudes().begin(), s.amplitudes().end());
        for (auto &a : rotated) {
            a *= std::polar(1.0, theta);
        }
        CHECK(fidelity_up_to_phase(s, StateVector(3, rotated)) == Approx(1.0).margin(1e-14));
    }
    CHECK(fidelity_up_to_phase(basis_state(1, "0"), basis_state(1, "1")) == 0.0);
    CHECK_THROWS_AS(fidelity_up_to_phase(s, basis_state(2, "00")), InvalidArgument);
}

TEST_CASE("random_state is normalized, seeded, and generically entangled", "[statevector]") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto s = random_state(3, seed);
        CHECK(std::abs(s.norm_squared() - 1.0) < 1e-12);
        const auto again = random_state(3, seed);
        for (std::size_t i = 0; i < s.dim(); ++i) {
            REQUIRE(again[i] == s[i]);
        }
        for (int q = 0; q < 3; ++q) {
            CHECK(reduced_purity(s, q) < 1.0 - 1e-6);
        }
    }
    CHECK(reduced_purity(basis_state(2, "01"), 0) == Approx(1.0));
}

TEST_CASE("StateVector rejects unnormalized or mis-sized amplitudes", "[statevector]") {
    CHECK_THROWS_AS(StateVector(1, {1.0, 1.0}), InvalidArgument);
    CHECK_THROWS_AS(StateVector(2, {1.0, 0.0}), InvalidArgument);
    CHECK_THROWS_AS(StateVector::normalized(1, {0.0, 0.0}), InvalidArgument);
}
