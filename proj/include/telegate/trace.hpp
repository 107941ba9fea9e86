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
 * JSON I/O: gate specification strings, versioned trace and report
 * documents, canonical state hashing and trace replay.
 *
 * Amplitudes and matrix entries are written as [re, im] pairs at full
 * double precision. Every document carries "schema": 1.
 */
#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "common.hpp"
#include "gate.hpp"
#include "network.hpp"
#include "protocols.hpp"
#include "statevector.hpp"
#include "verify.hpp"

namespace telegate {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

inline Json to_json(const Complex &z) { return Json::array({z.real(), z.imag()}); }

/// Accepts [re, im] or a bare real number.
inline Complex complex_from_json(const Json &j) {
    if (j.is_number()) {
        return {j.get<double>(), 0.0};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    throw InvalidArgument("expected a number or an [re, im] pair, got " + j.dump());
}

inline Json to_json(std::span<const Complex> amps) {
    Json out = Json::array();
    for (const Complex &a : amps) {
        out.push_back(to_json(a));
    }
    return out;
}

inline Json to_json(const Matrix &m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.dim(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.dim(); ++c) {
            row.push_back(to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Matrix matrix_from_json(const Json &j) {
    if (!j.is_array() || j.empty()) {
        throw InvalidArgument("matrix must be a non-empty array of rows");
    }
    const std::size_t dim = j.size();
    std::vector<Complex> entries;
    entries.reserve(dim * dim);
    for (const Json &row : j) {
        if (!row.is_array() || row.size() != dim) {
            throw InvalidArgument("matrix must be square");
        }
        for (const Json &e : row) {
            entries.push_back(complex_from_json(e));
        }
    }
    return {dim, std::move(entries)};
}

inline int arity_of(const Matrix &m) {
    int arity = 0;
    while ((std::size_t{1} << arity) < m.dim()) {
        ++arity;
    }
    if ((std::size_t{1} << arity) != m.dim() || arity == 0) {
        throw InvalidArgument("matrix dimension " + std::to_string(m.dim()) +
                              " is not a power of two >= 2");
    }
    return arity;
}

/// "X", "Z", "H", "I", "randU:<seed>", "randH:<seed>" or "matrix:[[..],[..]]".
inline Gate parse_gate_spec(std::string_view spec) {
    if (spec == "X") {
        return pauli_x();
    }
    if (spec == "Z") {
        return pauli_z();
    }
    if (spec == "H") {
        return hadamard();
    }
    if (spec == "I") {
        return identity_gate();
    }
    auto seed_after = [&](std::string_view prefix) -> std::uint64_t {
        const std::string digits(spec.substr(prefix.size()));
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
            throw InvalidArgument("gate spec '" + std::string(spec) +
                                  "': seed must be a non-negative integer");
        }
        return std::stoull(digits);
    };
    if (spec.starts_with("randU:")) {
        return random_unitary(seed_after("randU:"));
    }
    if (spec.starts_with("randH:")) {
        return random_involution(seed_after("randH:"));
    }
    if (spec.starts_with("matrix:")) {
        Json j;
        try {
            j = Json::parse(spec.substr(7));
        } catch (const Json::parse_error &e) {
            throw InvalidArgument("gate spec '" + std::string(spec) + "': " + e.what());
        }
        Matrix m = matrix_from_json(j);
        const int arity = arity_of(m);
        return {arity, std::move(m), "matrix"};
    }
    throw InvalidArgument("unknown gate spec '" + std::string(spec) +
                          "' (expected X, Z, H, I, randU:<seed>, randH:<seed> or "
                          "matrix:[[..],[..]])");
}

inline Json to_json(const Gate &g) {
    return {{"label", g.label()}, {"arity", g.arity()}, {"matrix", to_json(g.matrix())}};
}

inline Gate gate_from_json(const Json &j) {
    Matrix m = matrix_from_json(j.at("matrix"));
    const int arity = arity_of(m);
    return {arity, std::move(m), j.value("label", std::string("matrix"))};
}

/// FNV-1a over amplitudes rounded to multiples of 1e-12; 16 hex digits.
inline std::string state_hash(const StateVector &s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    auto mix = [&h](std::int64_t v) {
        auto u = static_cast<std::uint64_t>(v);
        for (int byte = 0; byte < 8; ++byte) {
            h ^= (u >> (8 * byte)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    };
    mix(s.num_qubits());
    for (const Complex &a : s.amplitudes()) {
        mix(std::llround(a.real() * 1e12));
        mix(std::llround(a.imag() * 1e12));
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

inline StateVector state_from_json(const Json &j, int num_qubits) {
    if (!j.is_array()) {
        throw InvalidArgument("state must be an array of [re, im] pairs");
    }
    std::vector<Complex> amps;
    amps.reserve(j.size());
    for (const Json &a : j) {
        amps.push_back(complex_from_json(a));
    }
    return StateVector::normalized(num_qubits, std::move(amps));
}

inline Json to_json(const CostLedger &l) { return {{"ebits", l.ebits}, {"cbits", l.cbits}}; }

inline Json to_json(const TraceEvent &event) {
    struct Visitor {
        Json operator()(const GateEvent &e) const {
            return {{"type", "gate"},
                    {"party", e.party},
                    {"qubits", e.qubits},
                    {"label", e.gate.label()},
                    {"matrix", to_json(e.gate.matrix())}};
        }
        Json operator()(const MeasureEvent &e) const {
            return {{"type", "measure"},
                    {"party", e.party},
                    {"qubits", Json::array({e.qubit})},
                    {"basis", to_string(e.basis)},
                    {"outcome", e.outcome},
                    {"probability", e.probability}};
        }
        Json operator()(const MessageEvent &e) const {
            return {{"type", "message"},
                    {"party", e.message.sender},
                    {"recipient", e.message.recipient},
                    {"tag", e.message.tag},
                    {"bit", e.message.bit}};
        }
    };
    return std::visit(Visitor{}, event);
}

/// Self-contained record of one branch: enough to rebuild and re-run it.
inline Json make_trace(const ProtocolSpec &spec, const StateVector &input,
                       const BranchOutcomes &branch, const Network &net,
                       const BranchRun &run) {
    Json events = Json::array();
    for (const TraceEvent &e : net.trace()) {
        events.push_back(to_json(e));
    }
    Json doc = {{"schema", kSchemaVersion},
                {"kind", "trace"},
                {"family", cli_name(spec.family)},
                {"n", spec.n},
                {"payload", to_json(spec.payload)},
                {"input", to_json(input.amplitudes())},
                {"outcomes", branch.to_string()},
                {"probability", run.probability},
                {"events", std::move(events)},
                {"ledger", to_json(net.ledger())}};
    if (run.data_state) {
        doc["final_state"] = to_json(run.data_state->amplitudes());
        doc["final_state_hash"] = state_hash(*run.data_state);
    } else {
        doc["final_state"] = nullptr;
        doc["final_state_hash"] = nullptr;
    }
    return doc;
}

inline Json to_json(const BranchResult &b) {
    return {{"outcomes", b.outcomes.to_string()},
            {"possible", b.possible},
            {"probability", b.probability},
            {"fidelity", b.fidelity},
            {"ledger", to_json(b.ledger)}};
}

inline Json to_json(const VerificationReport &r) {
    Json branches = Json::array();
    for (const BranchResult &b : r.branches) {
        branches.push_back(to_json(b));
    }
    Json doc = {{"schema", kSchemaVersion},
                {"kind", "report"},
                {"family", cli_name(r.spec.family)},
                {"n", r.spec.n},
                {"payload", to_json(r.spec.payload)},
                {"trials", r.trials},
                {"min_fidelity", r.min_fidelity},
                {"max_probability_deviation", r.max_probability_deviation},
                {"max_probability_sum_error", r.max_probability_sum_error},
                {"impossible_branches", r.impossible_branches},
                {"cost", to_json(r.cost)},
                {"expected_cost", to_json(r.expected_cost)},
                {"cost_ok", r.cost_ok},
                {"passed", r.passed()},
                {"branches", std::move(branches)}};
    if (!r.error.empty()) {
        doc["error"] = r.error;
    }
    return doc;
}

struct ReplayResult {
    bool ok = false;
    std::string message;
    std::string recorded_hash;
    std::string replayed_hash;
};

inline Basis basis_from_string(std::string_view s) {
    if (s == "computational") {
        return Basis::Computational;
    }
    if (s == "hadamard") {
        return Basis::Hadamard;
    }
    throw InvalidArgument("unknown basis '" + std::string(s) + "'");
}

/**
 * Rebuilds the network from the trace header and re-executes every event in
 * order. Fails on a schema mismatch, a measurement whose probability differs
 * from the record, a message bit that disagrees with the outcome it reports,
 * a ledger mismatch, or a final-state hash mismatch. LocalityViolation
 * propagates.
 */
inline ReplayResult replay_trace(const Json &doc) {
    ReplayResult result;
    auto fail = [&](std::string why) {
        result.ok = false;
        result.message = std::move(why);
        return result;
    };
    try {
        if (doc.value("schema", 0) != kSchemaVersion || doc.value("kind", "") != "trace") {
            return fail("not a schema-1 trace document");
        }
        const Family family = parse_family(doc.at("family").get<std::string>());
        const int n = doc.at("n").get<int>();
        const StateVector input = state_from_json(doc.at("input"), n);
        Network net = build_network(topology_of(family), n, input);
        std::map<std::string, int> outcomes;

        for (const Json &e : doc.at("events")) {
            const std::string type = e.at("type").get<std::string>();
            const int party = e.at("party").get<int>();
            if (type == "gate") {
                const std::vector<int> qubits = e.at("qubits").get<std::vector<int>>();
                net.local_apply(party, gate_from_json(e), qubits);
            } else if (type == "measure") {
                const int qubit = e.at("qubits").at(0).get<int>();
                const int outcome = e.at("outcome").get<int>();
                const LocalMeasurement m = net.local_measure(
                    party, qubit, basis_from_string(e.at("basis").get<std::string>()), outcome);
                const double recorded = e.at("probability").get<double>();
                if (std::abs(m.probability - recorded) > 1e-9) {
                    return fail("measurement of " + Network::qubit_name(qubit) +
                                " has probability " + std::to_string(m.probability) +
                                ", trace recorded " + std::to_string(recorded));
                }
                if (!m.possible) {
                    return fail("trace follows an impossible branch");
                }
                outcomes[Network::qubit_name(qubit)] = outcome;
            } else if (type == "message") {
                const std::string tag = e.at("tag").get<std::string>();
                const int bit = e.at("bit").get<int>();
                const auto it = outcomes.find(tag);
                if (it != outcomes.end() && it->second != bit) {
                    return fail("message " + tag + " carries bit " + std::to_string(bit) +
                                " but the measurement gave " + std::to_string(it->second));
                }
                net.send_cbit(party, e.at("recipient").get<int>(), bit, tag);
            } else {
                return fail("unknown event type '" + type + "'");
            }
        }

        const Json &ledger = doc.at("ledger");
        if (net.ledger().ebits != ledger.at("ebits").get<int>() ||
            net.ledger().cbits != ledger.at("cbits").get<int>()) {
            return fail("ledger mismatch");
        }
        if (doc.at("final_state_hash").is_null()) {
            return fail("trace has no final state");
        }
        result.recorded_hash = doc.at("final_state_hash").get<std::string>();
        result.replayed_hash = state_hash(net.state());
        if (result.recorded_hash != result.replayed_hash) {
            return fail("final state hash " + result.replayed_hash + " != recorded " +
                        result.recorded_hash);
        }
    } catch (const Json::exception &e) {
        return fail(std::string("malformed trace: ") + e.what());
    } catch (const InvalidArgument &e) {
        return fail(std::string("invalid trace: ") + e.what());
    } catch (const EntangledDiscard &e) {
        return fail(std::string("invalid trace: ") + e.what());
    }
    result.ok = true;
    result.message = "replay matches";
    return result;
}

} // namespace telegate
