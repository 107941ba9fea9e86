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
 * Executable gate-teleportation protocols over parallel and series Bell
 * networks, and the ideal gates they must implement.
 *
 * A protocol run is a deterministic script once every measurement outcome
 * is fixed in advance (a BranchOutcomes). Outcomes are consumed in the
 * order given by measurement_schedule().
 */
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "common.hpp"
#include "gate.hpp"
#include "network.hpp"
#include "statevector.hpp"

namespace telegate {

enum class Family {
    /// Parallel network; target receives U^(number of controls set).
    ParallelSimultaneousCU,
    /// Series network; target receives H^(parity of controls), H² = I.
    SeriesSimultaneousCH,
    /// Series network; target receives U iff every control is set.
    SeriesNControlledU,
};

inline constexpr Family kAllFamilies[] = {Family::ParallelSimultaneousCU,
                                          Family::SeriesSimultaneousCH,
                                          Family::SeriesNControlledU};

inline std::string_view cli_name(Family f) {
    switch (f) {
    case Family::ParallelSimultaneousCU:
        return "parallel-cu";
    case Family::SeriesSimultaneousCH:
        return "series-ch";
    case Family::SeriesNControlledU:
        return "series-ncu";
    }
    return "?";
}

inline Family parse_family(std::string_view name) {
    for (Family f : kAllFamilies) {
        if (cli_name(f) == name) {
            return f;
        }
    }
    throw InvalidArgument("unknown protocol family '" + std::string(name) +
                          "' (expected parallel-cu, series-ch or series-ncu)");
}

inline TopologyKind topology_of(Family f) {
    return f == Family::ParallelSimultaneousCU ? TopologyKind::Parallel
                                               : TopologyKind::Series;
}

struct ProtocolSpec {
    Family family;
    int n;
    Gate payload;
};

/// Throws InvalidArgument / InvolutionRequired for an unusable spec.
inline void validate_spec(const ProtocolSpec &spec, bool require_involution = true) {
    if (spec.n < 2) {
        throw InvalidArgument("protocol needs n >= 2 parties, got " + std::to_string(spec.n));
    }
    if (spec.payload.arity() != 1) {
        throw InvalidArgument("payload must be a single-qubit gate");
    }
    if (require_involution && spec.family == Family::SeriesSimultaneousCH) {
        const auto cert = certify_involution(spec.payload);
        if (!cert.certified()) {
            throw InvolutionRequired("InvolutionRequired: series-ch needs an involutory payload; '" +
                                     spec.payload.label() + "' has ||M^2 - I|| = " +
                                     std::to_string(cert.residual));
        }
    }
}

/// Number of measurements in one run: 2(n - 1) for every family.
inline int measurement_count(int n) { return 2 * (n - 1); }

/// One bit per scheduled measurement, in schedule order.
struct BranchOutcomes {
    std::vector<int> bits;

    /// bits[0] is the most significant bit of `index`.
    static BranchOutcomes from_index(std::uint64_t index, int length) {
        BranchOutcomes b;
        b.bits.resize(static_cast<std::size_t>(length));
        for (int k = 0; k < length; ++k) {
            b.bits[k] = static_cast<int>((index >> (length - 1 - k)) & 1U);
        }
        return b;
    }

    [[nodiscard]] std::string to_string() const {
        std::string s;
        for (int b : bits) {
            s.push_back(b != 0 ? '1' : '0');
        }
        return s;
    }
};

struct ScheduledMeasurement {
    int party;
    int qubit;
    Basis basis;

    friend bool operator==(const ScheduledMeasurement &,
                           const ScheduledMeasurement &) = default;
};

inline std::vector<ScheduledMeasurement> measurement_schedule(Family family, int n) {
    const Layout l = make_layout(topology_of(family), n);
    std::vector<ScheduledMeasurement> out;
    if (family == Family::ParallelSimultaneousCU) {
        for (int j = 1; j < n; ++j) {
            out.push_back({j, l.pairs[j - 1].qubit_a, Basis::Computational});
        }
        for (int j = 1; j < n; ++j) {
            out.push_back({n, l.pairs[j - 1].qubit_b, Basis::Hadamard});
        }
        return out;
    }
    for (int i = 1; i < n; ++i) {
        out.push_back({i, l.forward_of(i), Basis::Computational});
    }
    if (family == Family::SeriesSimultaneousCH) {
        for (int j = 2; j <= n; ++j) {
            out.push_back({j, l.incoming_of(j), Basis::Hadamard});
        }
    } else {
        for (int j = n; j >= 2; --j) {
            out.push_back({j, l.incoming_of(j), Basis::Hadamard});
        }
    }
    return out;
}

inline std::vector<ScheduledMeasurement> measurement_schedule(const ProtocolSpec &spec) {
    return measurement_schedule(spec.family, spec.n);
}

/// Test and tracing hooks. Defaults give a plain run.
struct RunOptions {
    /// Run series-ch even if the payload is not an involution.
    bool skip_involution_check = false;
    /// Called at named checkpoints with the current network.
    std::function<void(std::string_view stage, const Network &)> on_stage;
    /// Mutation testing: the local operation with this index (0-based, in
    /// issue order) has its first qubit swapped for one the acting party
    /// does not hold.
    std::optional<int> mutate_step;
    /// Which foreign qubit to use, modulo the number available.
    int mutate_choice = 0;
};

struct BranchRun {
    bool possible = true;
    /// Product of the per-measurement probabilities.
    double probability = 1.0;
    std::vector<double> step_probabilities;
    /// State of the data qubits in party order; empty if impossible.
    std::optional<StateVector> data_state;
};

namespace detail {

/// Issues local operations on behalf of parties and feeds the forced outcomes.
class Script {
  public:
    Script(Network &net, const BranchOutcomes &branch, const RunOptions &opts)
        : net_(net), branch_(branch), opts_(opts) {}

    void gate(int party, const Gate &g, std::vector<int> qubits) {
        maybe_mutate(party, qubits);
        net_.local_apply(party, g, qubits);
    }

    /// Returns the forced outcome, or nullopt once the branch is impossible.
    std::optional<int> measure(int party, int qubit, Basis basis) {
        if (next_ >= branch_.bits.size()) {
            throw InvalidArgument("branch has fewer outcomes than the protocol measures");
        }
        const int outcome = branch_.bits[next_++];
        std::vector<int> qubits{qubit};
        maybe_mutate(party, qubits);
        const LocalMeasurement m = net_.local_measure(party, qubits[0], basis, outcome);
        run_.step_probabilities.push_back(m.probability);
        run_.probability *= m.probability;
        if (!m.possible) {
            run_.possible = false;
            return std::nullopt;
        }
        return outcome;
    }

    void stage(std::string_view name) const {
        if (opts_.on_stage) {
            opts_.on_stage(name, net_);
        }
    }

    BranchRun abort() { return std::move(run_); }

    BranchRun finish() {
        if (next_ != branch_.bits.size()) {
            throw InvalidArgument("branch has more outcomes than the protocol measures");
        }
        stage("done");
        run_.data_state = net_.state();
        return std::move(run_);
    }

    Network &net() { return net_; }

  private:
    void maybe_mutate(int party, std::vector<int> &qubits) {
        const int step = op_index_++;
        if (!opts_.mutate_step || *opts_.mutate_step != step) {
            return;
        }
        std::vector<int> foreign;
        for (int q : net_.live_qubits()) {
            if (!net_.holds(party, q)) {
                foreign.push_back(q);
            }
        }
        if (foreign.empty()) {
            return;
        }
        const auto pick = static_cast<std::size_t>(opts_.mutate_choice) % foreign.size();
        qubits[0] = foreign[pick];
    }

    Network &net_;
    const BranchOutcomes &branch_;
    const RunOptions &opts_;
    std::size_t next_ = 0;
    int op_index_ = 0;
    BranchRun run_;
};

inline void require_topology(const Network &net, TopologyKind kind) {
    if (net.topology().kind != kind) {
        throw TopologyMismatch("protocol needs a " + std::string(to_string(kind)) +
                               " network, got " +
                               std::string(to_string(net.topology().kind)));
    }
}

inline void require_branch_length(const Network &net, const BranchOutcomes &branch) {
    const int expected = measurement_count(net.num_parties());
    if (static_cast<int>(branch.bits.size()) != expected) {
        throw InvalidArgument("branch has " + std::to_string(branch.bits.size()) +
                              " outcomes, protocol measures " + std::to_string(expected));
    }
}

inline std::string tag(int qubit) { return Network::qubit_name(qubit); }

} // namespace detail

/**
 * Parallel network, n - 1 controls each sharing a pair with the target.
 *
 * 1. Control j: CNOT(data_j -> half_j), measure half_j (Z), send to target.
 * 2. Target: X on its half j iff that bit is 1, then C-U(half_j -> data).
 * 3. Target: measure each half j (X basis), send m_j to control j.
 * 4. Control j: Z on data_j iff m_j = 1.
 */
inline BranchRun run_parallel_simultaneous_cu(Network &net, const Gate &payload,
                                              const BranchOutcomes &branch,
                                              const RunOptions &opts = {}) {
    detail::require_topology(net, TopologyKind::Parallel);
    detail::require_branch_length(net, branch);
    const int n = net.num_parties();
    const auto &pairs = net.topology().bell_pairs;
    const int target = n;
    const int target_data = net.party(target).data_qubit;
    const Gate cu = controlled(payload, 1);
    detail::Script s(net, branch, opts);

    for (int j = 1; j < n; ++j) {
        const int half = pairs[j - 1].qubit_a;
        s.gate(j, cnot(), {net.party(j).data_qubit, half});
        const auto bit = s.measure(j, half, Basis::Computational);
        if (!bit) {
            return s.abort();
        }
        net.send_cbit(j, target, *bit, detail::tag(half));
    }
    for (int j = 1; j < n; ++j) {
        if (net.read_cbit(target, detail::tag(pairs[j - 1].qubit_a)) == 1) {
            s.gate(target, pauli_x(), {pairs[j - 1].qubit_b});
        }
    }
    for (int j = 1; j < n; ++j) {
        s.gate(target, cu, {pairs[j - 1].qubit_b, target_data});
    }
    s.stage("controls-measured");

    for (int j = 1; j < n; ++j) {
        const int half = pairs[j - 1].qubit_b;
        const auto bit = s.measure(target, half, Basis::Hadamard);
        if (!bit) {
            return s.abort();
        }
        net.send_cbit(target, j, *bit, detail::tag(half));
    }
    for (int j = 1; j < n; ++j) {
        if (net.read_cbit(j, detail::tag(pairs[j - 1].qubit_b)) == 1) {
            s.gate(j, pauli_z(), {net.party(j).data_qubit});
        }
    }
    return s.finish();
}

namespace detail {

/// Forward pass shared by both series protocols. Afterwards each party's
/// incoming half holds a function of the upstream data bits: the parity for
/// series-ch, the conjunction for series-ncu. Returns false if impossible.
inline bool series_forward(Script &s, const Gate &combine, bool parity) {
    Network &net = s.net();
    const int n = net.num_parties();
    const auto &pairs = net.topology().bell_pairs;
    auto forward = [&](int i) { return pairs[i - 1].qubit_a; };
    auto incoming = [&](int i) { return pairs[i - 2].qubit_b; };

    s.gate(1, cnot(), {net.party(1).data_qubit, forward(1)});
    auto bit = s.measure(1, forward(1), Basis::Computational);
    if (!bit) {
        return false;
    }
    net.send_cbit(1, 2, *bit, tag(forward(1)));

    for (int i = 2; i < n; ++i) {
        if (net.read_cbit(i, tag(forward(i - 1))) == 1) {
            s.gate(i, pauli_x(), {incoming(i)});
        }
        const int data = net.party(i).data_qubit;
        if (parity) {
            s.gate(i, cnot(), {incoming(i), forward(i)});
            s.gate(i, cnot(), {data, forward(i)});
        } else {
            s.gate(i, combine, {incoming(i), data, forward(i)});
        }
        s.stage("forward:" + std::to_string(i));
        bit = s.measure(i, forward(i), Basis::Computational);
        if (!bit) {
            return false;
        }
        net.send_cbit(i, i + 1, *bit, tag(forward(i)));
    }
    if (net.read_cbit(n, tag(forward(n - 1))) == 1) {
        s.gate(n, pauli_x(), {incoming(n)});
    }
    return true;
}

} // namespace detail

/**
 * Series network, payload must be an involution.
 *
 * Forward: party 1 CNOTs its data onto its forward half and measures it;
 * every intermediate party fixes its incoming half with X, CNOTs both the
 * incoming half and its data onto the forward half, measures and passes the
 * bit on. The target's incoming half then carries the parity of all control
 * bits and drives C-H onto the target data.
 *
 * Backward: party j measures its incoming half in the X basis and sends the
 * outcome to every upstream party; party i applies Z iff the XOR of all
 * outcomes from parties j > i is 1.
 */
inline BranchRun run_series_simultaneous_ch(Network &net, const Gate &payload,
                                            const BranchOutcomes &branch,
                                            const RunOptions &opts = {}) {
    detail::require_topology(net, TopologyKind::Series);
    detail::require_branch_length(net, branch);
    if (!opts.skip_involution_check && !certify_involution(payload).certified()) {
        throw InvolutionRequired("InvolutionRequired: payload '" + payload.label() +
                                 "' is not an involution");
    }
    const int n = net.num_parties();
    const auto &pairs = net.topology().bell_pairs;
    auto incoming = [&](int i) { return pairs[i - 2].qubit_b; };
    detail::Script s(net, branch, opts);

    if (!detail::series_forward(s, cnot(), true)) {
        return s.abort();
    }
    s.gate(n, controlled(payload, 1), {incoming(n), net.party(n).data_qubit});
    s.stage("target-applied");

    for (int j = 2; j <= n; ++j) {
        const auto bit = s.measure(j, incoming(j), Basis::Hadamard);
        if (!bit) {
            return s.abort();
        }
        for (int i = 1; i < j; ++i) {
            net.send_cbit(j, i, *bit, detail::tag(incoming(j)));
        }
    }
    for (int i = 1; i < n; ++i) {
        int parity = 0;
        for (int j = i + 1; j <= n; ++j) {
            parity ^= net.read_cbit(i, detail::tag(incoming(j)));
        }
        if (parity == 1) {
            s.gate(i, pauli_z(), {net.party(i).data_qubit});
        }
    }
    return s.finish();
}

/**
 * Series network, (n-1)-controlled U on the target.
 *
 * Forward as for series-ch except intermediate parties use a Toffoli
 * (incoming half, data -> forward half), so the target's incoming half
 * carries the AND of all control bits and drives C-U.
 *
 * Backward, one hop at a time: the target measures its incoming half (X
 * basis) and tells party n-1. Each intermediate party applies CZ between its
 * incoming half and data iff the received bit is 1, then measures its
 * incoming half and tells its upstream neighbour. Party 1 applies Z iff told 1.
 */
inline BranchRun run_series_ncu(Network &net, const Gate &payload,
                                const BranchOutcomes &branch, const RunOptions &opts = {}) {
    detail::require_topology(net, TopologyKind::Series);
    detail::require_branch_length(net, branch);
    const int n = net.num_parties();
    const auto &pairs = net.topology().bell_pairs;
    auto incoming = [&](int i) { return pairs[i - 2].qubit_b; };
    detail::Script s(net, branch, opts);

    if (!detail::series_forward(s, controlled(pauli_x(), 2), false)) {
        return s.abort();
    }
    s.gate(n, controlled(payload, 1), {incoming(n), net.party(n).data_qubit});
    s.stage("target-applied");

    auto bit = s.measure(n, incoming(n), Basis::Hadamard);
    if (!bit) {
        return s.abort();
    }
    net.send_cbit(n, n - 1, *bit, detail::tag(incoming(n)));
    const Gate cz = controlled(pauli_z(), 1);
    for (int i = n - 1; i >= 2; --i) {
        if (net.read_cbit(i, detail::tag(incoming(i + 1))) == 1) {
            s.gate(i, cz, {incoming(i), net.party(i).data_qubit});
        }
        s.stage("backward:" + std::to_string(i));
        bit = s.measure(i, incoming(i), Basis::Hadamard);
        if (!bit) {
            return s.abort();
        }
        net.send_cbit(i, i - 1, *bit, detail::tag(incoming(i)));
    }
    if (net.read_cbit(1, detail::tag(incoming(2))) == 1) {
        s.gate(1, pauli_z(), {net.party(1).data_qubit});
    }
    return s.finish();
}

inline BranchRun run_protocol(const ProtocolSpec &spec, Network &net,
                              const BranchOutcomes &branch, const RunOptions &opts = {}) {
    switch (spec.family) {
    case Family::ParallelSimultaneousCU:
        return run_parallel_simultaneous_cu(net, spec.payload, branch, opts);
    case Family::SeriesSimultaneousCH:
        return run_series_simultaneous_ch(net, spec.payload, branch, opts);
    case Family::SeriesNControlledU:
        return run_series_ncu(net, spec.payload, branch, opts);
    }
    throw InvalidArgument("unknown family");
}

/// The ideal gate, applied directly to the data register.
inline StateVector oracle_effect(const ProtocolSpec &spec, const StateVector &input) {
    if (input.num_qubits() != spec.n) {
        throw InvalidArgument("oracle_effect: input must have n qubits");
    }
    const int target = spec.n - 1;
    if (spec.family == Family::SeriesNControlledU) {
        std::vector<int> all(static_cast<std::size_t>(spec.n));
        for (int q = 0; q < spec.n; ++q) {
            all[q] = q;
        }
        return apply_gate(input, controlled(spec.payload, spec.n - 1), all);
    }
    // U^(sum of control bits) as a product of two-qubit controlled gates.
    const Gate cu = controlled(spec.payload, 1);
    StateVector out = input;
    for (int c = 0; c < target; ++c) {
        out = apply_gate(out, cu, {c, target});
    }
    return out;
}

} // namespace telegate
