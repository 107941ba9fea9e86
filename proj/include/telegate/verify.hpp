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
 * Exhaustive branch enumeration and the checks that turn a protocol run
 * into a verdict: oracle fidelity on every branch, branch-probability
 * accounting and exact ebit/cbit budgets.
 */
#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "common.hpp"
#include "gate.hpp"
#include "network.hpp"
#include "protocols.hpp"
#include "statevector.hpp"

namespace telegate {

struct BranchResult {
    BranchOutcomes outcomes;
    bool possible = true;
    double probability = 0.0;
    /// Against oracle_effect; 0 for impossible branches.
    double fidelity = 0.0;
    CostLedger ledger;
    std::optional<StateVector> data_state;
};

/// Closed-form costs: (n-1) ebits for every family; 2(n-1) cbits for the
/// parallel and series-ncu protocols, (n² + n - 2)/2 for series-ch.
inline CostLedger expected_costs(Family family, int n) {
    const int ebits = n - 1;
    const int cbits = family == Family::SeriesSimultaneousCH ? (n * n + n - 2) / 2
                                                             : 2 * (n - 1);
    return {ebits, cbits};
}

inline bool check_costs(const ProtocolSpec &spec, const CostLedger &ledger) {
    return ledger == expected_costs(spec.family, spec.n);
}

/// Worker count: TELEGATE_THREADS if set and positive, else the hardware.
inline unsigned default_thread_count() {
    if (const char *env = std::getenv("TELEGATE_THREADS")) {
        char *end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v > 0) {
            return static_cast<unsigned>(v);
        }
    }
    return std::max(1U, std::thread::hardware_concurrency());
}

struct EnumerateOptions {
    /// 0 = default_thread_count().
    unsigned threads = 0;
    bool skip_involution_check = false;
    /// Keep each branch's final data state in the result.
    bool keep_states = false;
};

/// Runs the protocol once per outcome assignment: 2^(2(n-1)) branches,
/// ordered by outcome bitstring.
inline std::vector<BranchResult> enumerate_branches(const ProtocolSpec &spec,
                                                    const StateVector &input,
                                                    const EnumerateOptions &opts = {}) {
    validate_spec(spec, !opts.skip_involution_check);
    if (input.num_qubits() != spec.n) {
        throw InvalidArgument("enumerate_branches: input must have n = " +
                              std::to_string(spec.n) + " qubits");
    }
    const int length = measurement_count(spec.n);
    const std::size_t count = std::size_t{1} << length;
    const StateVector ideal = oracle_effect(spec, input);
    RunOptions run_opts;
    run_opts.skip_involution_check = opts.skip_involution_check;

    std::vector<BranchResult> results(count);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto worker = [&] {
        for (std::size_t idx = next++; idx < count; idx = next++) {
            try {
                BranchResult &r = results[idx];
                r.outcomes = BranchOutcomes::from_index(idx, length);
                Network net = build_network(topology_of(spec.family), spec.n, input);
                BranchRun run = run_protocol(spec, net, r.outcomes, run_opts);
                r.possible = run.possible;
                r.probability = run.probability;
                r.ledger = net.ledger();
                if (run.possible) {
                    r.fidelity = fidelity_up_to_phase(*run.data_state, ideal);
                    if (opts.keep_states) {
                        r.data_state = std::move(run.data_state);
                    }
                }
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = count;
            }
        }
    };

    const unsigned threads = std::min<std::size_t>(
        opts.threads == 0 ? default_thread_count() : opts.threads, count);
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return results;
}

/**
 * Ground truth built without gates.controlled or apply_gate: the full
 * 2^n × 2^n effect matrix is filled column by column from the control bits
 * of each basis state, then multiplied onto the input.
 */
inline StateVector brute_force_oracle(const ProtocolSpec &spec, const StateVector &input) {
    const int n = spec.n;
    if (n < 2 || n > 7) {
        throw InvalidArgument("brute_force_oracle: n must be in [2, 7], got " +
                              std::to_string(n));
    }
    if (input.num_qubits() != n) {
        throw InvalidArgument("brute_force_oracle: input must have n qubits");
    }
    const std::size_t dim = std::size_t{1} << n;
    const Matrix &u = spec.payload.matrix();
    std::vector<Matrix> powers{Matrix::identity(2)};
    for (int k = 1; k < n; ++k) {
        powers.push_back(powers.back() * u);
    }

    Matrix effect(dim);
    for (std::size_t col = 0; col < dim; ++col) {
        const std::size_t target_bit = col & 1U;
        const std::size_t controls = col >> 1U;
        int ones = 0;
        for (std::size_t c = controls; c != 0; c >>= 1U) {
            ones += static_cast<int>(c & 1U);
        }
        const Matrix *op = nullptr;
        if (spec.family == Family::SeriesNControlledU) {
            op = ones == n - 1 ? &u : &powers[0];
        } else {
            op = &powers[static_cast<std::size_t>(ones)];
        }
        for (std::size_t out_bit = 0; out_bit < 2; ++out_bit) {
            effect((controls << 1U) | out_bit, col) = (*op)(out_bit, target_bit);
        }
    }

    std::vector<Complex> out(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        for (std::size_t c = 0; c < dim; ++c) {
            out[r] += effect(r, c) * input[c];
        }
    }
    return {n, std::move(out)};
}

struct VerificationReport {
    ProtocolSpec spec;

    explicit VerificationReport(ProtocolSpec s) : spec(std::move(s)) {}
    /// Number of input states checked.
    int trials = 0;
    double min_fidelity = 1.0;
    /// max |p_branch - 2^(-2(n-1))| over all branches and inputs.
    double max_probability_deviation = 0.0;
    /// max |Σ_branches p - 1| over inputs.
    double max_probability_sum_error = 0.0;
    int impossible_branches = 0;
    bool cost_ok = true;
    CostLedger cost;
    CostLedger expected_cost;
    /// Branch table of the first input.
    std::vector<BranchResult> branches;
    /// Non-empty if the spec was rejected before running.
    std::string error;

    [[nodiscard]] bool passed() const {
        return error.empty() && trials > 0 && min_fidelity >= 1.0 - kTolerance && cost_ok &&
               max_probability_sum_error <= 1e-9;
    }
};

struct VerifyOptions {
    bool include_basis_inputs = true;
    /// Extra literal inputs, checked after the basis sweep.
    std::vector<StateVector> extra_inputs;
    EnumerateOptions enumerate;
};

/// Per-input seeds derived from `seed` for the random inputs of verify_protocol.
inline std::vector<std::uint64_t> input_seeds(std::uint64_t seed, int count) {
    std::mt19937_64 rng(seed);
    std::vector<std::uint64_t> out(static_cast<std::size_t>(std::max(count, 0)));
    for (auto &s : out) {
        s = rng();
    }
    return out;
}

/// Checks every computational basis input plus `num_random_inputs` random
/// (generically entangled) states.
inline VerificationReport verify_protocol(const ProtocolSpec &spec, int num_random_inputs,
                                          std::uint64_t seed,
                                          const VerifyOptions &opts = {}) {
    VerificationReport report{spec};
    report.expected_cost = expected_costs(spec.family, spec.n);
    try {
        validate_spec(spec, !opts.enumerate.skip_involution_check);
    } catch (const Error &e) {
        report.error = e.what();
        report.cost_ok = false;
        return report;
    }

    std::vector<StateVector> inputs;
    if (opts.include_basis_inputs) {
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << spec.n); ++x) {
            inputs.push_back(basis_state(spec.n, x));
        }
    }
    for (const auto &extra : opts.extra_inputs) {
        inputs.push_back(extra);
    }
    for (std::uint64_t s : input_seeds(seed, num_random_inputs)) {
        inputs.push_back(random_state(spec.n, s));
    }

    const double uniform = std::ldexp(1.0, -measurement_count(spec.n));
    bool first = true;
    for (const StateVector &input : inputs) {
        std::vector<BranchResult> branches = enumerate_branches(spec, input, opts.enumerate);
        double total = 0.0;
        for (const BranchResult &b : branches) {
            total += b.probability;
            report.max_probability_deviation =
                std::max(report.max_probability_deviation, std::abs(b.probability - uniform));
            if (b.possible) {
                report.min_fidelity = std::min(report.min_fidelity, b.fidelity);
            } else {
                ++report.impossible_branches;
            }
            if (!check_costs(spec, b.ledger)) {
                report.cost_ok = false;
            }
            report.cost = b.ledger;
        }
        report.max_probability_sum_error =
            std::max(report.max_probability_sum_error, std::abs(total - 1.0));
        ++report.trials;
        if (first) {
            report.branches = std::move(branches);
            first = false;
        }
    }
    return report;
}

} // namespace telegate
