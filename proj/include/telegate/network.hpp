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
 * The LOCC world model. A Network owns the joint state of all parties,
 * records which party holds which qubit, and carries the classical
 * message bus. Every quantum operation is issued on behalf of a party and
 * is rejected with LocalityViolation if it touches a qubit that party does
 * not hold.
 *
 * Qubits carry stable ids (their index in the freshly built register).
 * Measured qubits are discarded immediately, so positions shift while ids
 * stay fixed; all public operations take ids.
 *
 * Register layout, party by party:
 *   Parallel: control i = [data_i, bell_i]; target = [half_1 .. half_{n-1}, data_n]
 *   Series:   party 1 = [data_1, fwd_1]; party i = [in_i, data_i, fwd_i];
 *             party n = [in_n, data_n]
 * For n = 3 these are |a A b B C1 C2 c⟩ and |1 2 3 4 5 6 7⟩.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "common.hpp"
#include "gate.hpp"
#include "statevector.hpp"

namespace telegate {

enum class TopologyKind { Parallel, Series };

inline std::string_view to_string(TopologyKind k) {
    return k == TopologyKind::Parallel ? "parallel" : "series";
}

enum class Role { Control, Target };

struct ClassicalMessage {
    int sender;
    int recipient;
    int bit;
    std::string tag;
};

struct Party {
    int id;
    Role role;
    int data_qubit;
    std::set<int> held_qubits;
    std::vector<ClassicalMessage> inbox;
};

/// One Bell pair (|00⟩+|11⟩)/√2 shared between two parties.
struct BellPair {
    int party_a;
    int qubit_a;
    int party_b;
    int qubit_b;
};

struct Topology {
    TopologyKind kind;
    int n;
    std::vector<BellPair> bell_pairs;
};

struct CostLedger {
    int ebits = 0;
    int cbits = 0;

    friend bool operator==(const CostLedger &, const CostLedger &) = default;
};

struct GateEvent {
    int party;
    std::vector<int> qubits;
    Gate gate;
};

struct MeasureEvent {
    int party;
    int qubit;
    Basis basis;
    int outcome;
    double probability;
};

struct MessageEvent {
    ClassicalMessage message;
};

using TraceEvent = std::variant<GateEvent, MeasureEvent, MessageEvent>;

struct LocalMeasurement {
    double probability;
    bool possible;
};

/// Qubit ids and ownership for a topology, before any state exists.
struct Layout {
    TopologyKind kind;
    int n;
    int num_qubits;
    /// data[i] = data qubit of party i + 1.
    std::vector<int> data;
    /// Parallel: pair j-1 links control j to the target.
    /// Series: pair i-1 links party i (qubit_a) to party i + 1 (qubit_b).
    std::vector<BellPair> pairs;
    /// held[i] = qubits initially held by party i + 1.
    std::vector<std::set<int>> held;

    [[nodiscard]] int data_of(int party) const { return data.at(party - 1); }
    /// Series: the half party i shares with party i + 1.
    [[nodiscard]] int forward_of(int party) const { return pairs.at(party - 1).qubit_a; }
    /// Series: the half party i shares with party i - 1.
    [[nodiscard]] int incoming_of(int party) const { return pairs.at(party - 2).qubit_b; }
};

inline Layout make_layout(TopologyKind kind, int n) {
    if (n < 2) {
        throw InvalidArgument("network: need at least 2 parties, got " + std::to_string(n));
    }
    Layout l{kind, n, 3 * n - 2, std::vector<int>(n, -1), {}, std::vector<std::set<int>>(n)};
    int next_id = 0;
    if (kind == TopologyKind::Parallel) {
        for (int i = 1; i < n; ++i) {
            l.data[i - 1] = next_id++;
            const int half = next_id++;
            l.pairs.push_back({i, half, n, -1});
            l.held[i - 1] = {l.data[i - 1], half};
        }
        for (int i = 1; i < n; ++i) {
            l.pairs[i - 1].qubit_b = next_id;
            l.held[n - 1].insert(next_id++);
        }
        l.data[n - 1] = next_id++;
        l.held[n - 1].insert(l.data[n - 1]);
    } else {
        for (int i = 1; i <= n; ++i) {
            if (i > 1) {
                l.pairs.back().qubit_b = next_id;
                l.held[i - 1].insert(next_id++);
            }
            l.data[i - 1] = next_id++;
            l.held[i - 1].insert(l.data[i - 1]);
            if (i < n) {
                l.pairs.push_back({i, next_id, i + 1, -1});
                l.held[i - 1].insert(next_id++);
            }
        }
    }
    return l;
}

class Network {
  public:
    /// Appends one Bell pair per topology edge to `input` (one data qubit
    /// per party, party order) and distributes ownership.
    static Network build(TopologyKind kind, int n, const StateVector &input) {
        if (n < 2) {
            throw InvalidArgument("build_network: need at least 2 parties, got " +
                                  std::to_string(n));
        }
        if (input.num_qubits() != n) {
            throw InvalidArgument("build_network: input has " +
                                  std::to_string(input.num_qubits()) +
                                  " qubits, expected one per party (" +
                                  std::to_string(n) + ")");
        }
        const Layout layout = make_layout(kind, n);
        Network net;
        net.topology_ = Topology{kind, n, layout.pairs};
        for (int i = 1; i <= n; ++i) {
            net.parties_.push_back(Party{i, i == n ? Role::Target : Role::Control,
                                         layout.data_of(i), layout.held[i - 1], {}});
        }

        // input ⊗ Φ ⊗ ... ⊗ Φ, then move every factor to its layout slot.
        const double h = 1.0 / std::sqrt(2.0);
        const StateVector bell(2, {h, 0.0, 0.0, h});
        StateVector joint = input;
        std::vector<int> perm;
        for (const Party &p : net.parties_) {
            perm.push_back(p.data_qubit);
        }
        for (const BellPair &pair : net.topology_.bell_pairs) {
            joint = tensor(joint, bell);
            perm.push_back(pair.qubit_a);
            perm.push_back(pair.qubit_b);
        }
        net.state_ = permute_qubits(joint, perm);
        net.live_.resize(static_cast<std::size_t>(layout.num_qubits));
        for (int id = 0; id < layout.num_qubits; ++id) {
            net.live_[id] = id;
        }
        net.ledger_.ebits = static_cast<int>(net.topology_.bell_pairs.size());
        return net;
    }

    [[nodiscard]] const Topology &topology() const { return topology_; }
    [[nodiscard]] int num_parties() const { return topology_.n; }
    [[nodiscard]] const std::vector<Party> &parties() const { return parties_; }
    [[nodiscard]] const Party &party(int id) const { return parties_.at(index_of(id)); }
    [[nodiscard]] const StateVector &state() const { return *state_; }
    /// live_qubits()[position] = qubit id.
    [[nodiscard]] std::span<const int> live_qubits() const { return live_; }
    [[nodiscard]] const CostLedger &ledger() const { return ledger_; }
    [[nodiscard]] const std::vector<TraceEvent> &trace() const { return trace_; }

    /// Human-readable qubit name, 1-based: "q1", "q2", ...
    static std::string qubit_name(int id) { return "q" + std::to_string(id + 1); }

    [[nodiscard]] int position_of(int qubit) const {
        const auto it = std::find(live_.begin(), live_.end(), qubit);
        if (it == live_.end()) {
            throw InvalidArgument("qubit " + qubit_name(qubit) + " is not live");
        }
        return static_cast<int>(it - live_.begin());
    }

    [[nodiscard]] bool holds(int party_id, int qubit) const {
        return party(party_id).held_qubits.contains(qubit);
    }

    void local_apply(int party_id, const Gate &g, std::span<const int> qubits) {
        std::vector<int> positions;
        positions.reserve(qubits.size());
        for (int q : qubits) {
            require_held(party_id, q, "gate " + g.label());
            positions.push_back(position_of(q));
        }
        state_ = apply_gate(*state_, g, positions);
        trace_.emplace_back(GateEvent{party_id, {qubits.begin(), qubits.end()}, g});
    }

    void local_apply(int party_id, const Gate &g, std::initializer_list<int> qubits) {
        local_apply(party_id, g, std::span<const int>(qubits.begin(), qubits.size()));
    }

    /// Projects `qubit` onto `outcome` and discards it. For an impossible
    /// outcome the state is left untouched and `possible` is false.
    LocalMeasurement local_measure(int party_id, int qubit, Basis basis, int outcome) {
        require_held(party_id, qubit, "measurement");
        const int pos = position_of(qubit);
        Projection proj = project_measure(*state_, pos, basis, outcome);
        trace_.emplace_back(
            MeasureEvent{party_id, qubit, basis, outcome, proj.record.probability});
        if (!proj.possible()) {
            return {proj.record.probability, false};
        }
        state_ = discard_qubit(*proj.post, pos);
        live_.erase(live_.begin() + pos);
        parties_[index_of(party_id)].held_qubits.erase(qubit);
        return {proj.record.probability, true};
    }

    void send_cbit(int from, int to, int bit, std::string tag) {
        if (from == to) {
            throw InvalidArgument("send_cbit: party " + std::to_string(from) +
                                  " cannot send to itself");
        }
        if (bit != 0 && bit != 1) {
            throw InvalidArgument("send_cbit: bit must be 0 or 1");
        }
        (void)party(from);
        ClassicalMessage msg{from, to, bit, std::move(tag)};
        parties_.at(index_of(to)).inbox.push_back(msg);
        ++ledger_.cbits;
        trace_.emplace_back(MessageEvent{std::move(msg)});
    }

    [[nodiscard]] int read_cbit(int party_id, std::string_view tag) const {
        for (const ClassicalMessage &m : party(party_id).inbox) {
            if (m.tag == tag) {
                return m.bit;
            }
        }
        throw MissingMessage("party " + std::to_string(party_id) +
                             " has no message tagged '" + std::string(tag) + "'");
    }

  private:
    Network() = default;

    [[nodiscard]] std::size_t index_of(int party_id) const {
        if (party_id < 1 || party_id > topology_.n) {
            throw InvalidArgument("no party with id " + std::to_string(party_id));
        }
        return static_cast<std::size_t>(party_id - 1);
    }

    void require_held(int party_id, int qubit, const std::string &what) const {
        if (!holds(party_id, qubit)) {
            throw LocalityViolation("party " + std::to_string(party_id) + " attempted " +
                                    what + " on " + qubit_name(qubit) +
                                    ", which it does not hold");
        }
    }

    Topology topology_{TopologyKind::Parallel, 0, {}};
    std::vector<Party> parties_;
    std::optional<StateVector> state_;
    std::vector<int> live_;
    CostLedger ledger_;
    std::vector<TraceEvent> trace_;
};

inline Network build_network(TopologyKind kind, int n, const StateVector &input) {
    return Network::build(kind, n, input);
}

} // namespace telegate
