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
 * Command implementations behind the `telegate` executable. Kept in the
 * library so tests can drive them without spawning a process.
 *
 * Exit codes: 0 success, 1 verification failure or replay divergence,
 * 2 configuration error, 3 LocalityViolation.
 */
#pragma once

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "common.hpp"
#include "gate.hpp"
#include "network.hpp"
#include "protocols.hpp"
#include "statevector.hpp"
#include "trace.hpp"
#include "verify.hpp"

namespace telegate::cli {

enum ExitCode : int {
    kOk = 0,
    kVerificationFailed = 1,
    kConfigError = 2,
    kLocalityViolation = 3,
};

/// Largest party count accepted by the commands (13-qubit registers).
inline constexpr int kMaxParties = 7;

struct RunConfig {
    std::string family;
    int n = 3;
    std::string payload = "H";
    /// "basis-sweep", "random:<count>" or "literal:[[re,im],...]".
    std::string inputs = "random:20";
    std::uint64_t seed = 0;
    std::string trace_out;
    std::string report_out;
};

struct InputPlan {
    bool basis = true;
    int random_count = 0;
    std::optional<StateVector> literal;
};

inline InputPlan parse_inputs(std::string_view text, int n) {
    InputPlan plan;
    if (text == "basis-sweep") {
        return plan;
    }
    if (text.starts_with("random:")) {
        const std::string digits(text.substr(7));
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
            throw InvalidArgument("--inputs random:<count> needs a non-negative integer");
        }
        plan.random_count = std::stoi(digits);
        return plan;
    }
    if (text.starts_with("literal:")) {
        Json j;
        try {
            j = Json::parse(text.substr(8));
        } catch (const Json::parse_error &e) {
            throw InvalidArgument(std::string("--inputs literal: ") + e.what());
        }
        if (!j.is_array() || j.size() != (std::size_t{1} << n)) {
            throw InvalidArgument("--inputs literal: expected " +
                                  std::to_string(std::size_t{1} << n) + " amplitudes");
        }
        plan.basis = false;
        plan.literal = state_from_json(j, n);
        return plan;
    }
    throw InvalidArgument("--inputs must be basis-sweep, random:<count> or literal:[...]");
}

inline void write_json(const std::string &path, const Json &doc) {
    std::ofstream out(path);
    if (!out) {
        throw InvalidArgument("cannot open '" + path + "' for writing");
    }
    out << doc.dump(2) << '\n';
}

/// Verifies the configured protocol, writes the report and one branch trace.
inline int cmd_run(const RunConfig &config, std::ostream &out, std::ostream &err) {
    std::optional<ProtocolSpec> spec;
    InputPlan plan;
    try {
        const Family family = parse_family(config.family);
        if (config.n < 2 || config.n > kMaxParties) {
            throw InvalidArgument("--n must be in [2, " + std::to_string(kMaxParties) + "]");
        }
        spec.emplace(ProtocolSpec{family, config.n, parse_gate_spec(config.payload)});
        plan = parse_inputs(config.inputs, config.n);
        validate_spec(*spec);
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        if (spec && !config.report_out.empty()) {
            VerificationReport rejected{*spec};
            rejected.error = e.what();
            rejected.cost_ok = false;
            rejected.expected_cost = expected_costs(spec->family, spec->n);
            try {
                write_json(config.report_out, to_json(rejected));
            } catch (const Error &) {
            }
        }
        return kConfigError;
    }

    try {
        VerifyOptions opts;
        opts.include_basis_inputs = plan.basis;
        if (plan.literal) {
            opts.extra_inputs.push_back(*plan.literal);
        }
        const VerificationReport report =
            verify_protocol(*spec, plan.random_count, config.seed, opts);

        // Representative branch for the trace.
        StateVector input = plan.literal ? *plan.literal
                            : plan.random_count > 0
                                ? random_state(spec->n, input_seeds(config.seed, 1)[0])
                                : basis_state(spec->n, (std::uint64_t{1} << spec->n) - 1);
        std::mt19937_64 rng(config.seed);
        const int length = measurement_count(spec->n);
        const auto branch =
            BranchOutcomes::from_index(rng() & ((std::uint64_t{1} << length) - 1), length);
        Network net = build_network(topology_of(spec->family), spec->n, input);
        const BranchRun run = run_protocol(*spec, net, branch);

        if (!config.trace_out.empty()) {
            write_json(config.trace_out, make_trace(*spec, input, branch, net, run));
        }
        if (!config.report_out.empty()) {
            write_json(config.report_out, to_json(report));
        }

        out << cli_name(spec->family) << " n=" << spec->n << " payload=" << spec->payload.label()
            << '\n'
            << "  inputs checked:        " << report.trials << '\n'
            << "  branches per input:    " << (std::uint64_t{1} << length) << '\n'
            << std::setprecision(17) << "  min fidelity:          " << report.min_fidelity << '\n'
            << std::setprecision(6)
            << "  max |p - uniform|:     " << report.max_probability_deviation << '\n'
            << "  cost:                  " << report.cost.ebits << " ebits, " << report.cost.cbits
            << " cbits (expected " << report.expected_cost.ebits << ", "
            << report.expected_cost.cbits << ")\n"
            << "  trace final hash:      "
            << (run.data_state ? state_hash(*run.data_state) : std::string("-")) << '\n'
            << (report.passed() ? "PASS" : "FAIL") << '\n';
        return report.passed() ? kOk : kVerificationFailed;
    } catch (const LocalityViolation &e) {
        err << "internal error: " << e.what() << '\n';
        return kLocalityViolation;
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }
}

/// Prints measured-vs-formula costs for n = 2..n_max; empty `family` = all.
inline int cmd_costs(const std::string &family, int n_max, std::ostream &out,
                     std::ostream &err) {
    std::vector<Family> families;
    try {
        if (family.empty()) {
            families.assign(std::begin(kAllFamilies), std::end(kAllFamilies));
        } else {
            families.push_back(parse_family(family));
        }
        if (n_max < 2 || n_max > kMaxParties) {
            throw InvalidArgument("--n-max must be in [2, " + std::to_string(kMaxParties) + "]");
        }
    } catch (const Error &e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }

    bool all_ok = true;
    try {
        for (Family f : families) {
            const Gate payload = f == Family::SeriesSimultaneousCH ? hadamard() : pauli_x();
            for (int n = 2; n <= n_max; ++n) {
                Network net = build_network(topology_of(f), n, random_state(n, 1));
                const BranchOutcomes branch =
                    BranchOutcomes::from_index(0, measurement_count(n));
                run_protocol(ProtocolSpec{f, n, payload}, net, branch);
                const CostLedger expected = expected_costs(f, n);
                const bool ok = net.ledger() == expected;
                all_ok = all_ok && ok;
                out << cli_name(f) << " n=" << n << ": " << net.ledger().ebits
                    << (net.ledger().ebits == 1 ? " ebit, " : " ebits, ") << net.ledger().cbits
                    << " cbits, formula " << expected.cbits << ", " << (ok ? "OK" : "MISMATCH")
                    << '\n';
            }
        }
    } catch (const LocalityViolation &e) {
        err << "internal error: " << e.what() << '\n';
        return kLocalityViolation;
    }
    return all_ok ? kOk : kVerificationFailed;
}

inline int cmd_replay(const std::string &path, std::ostream &out, std::ostream &err) {
    std::ifstream in(path);
    if (!in) {
        err << "error: cannot open trace '" << path << "'\n";
        return kConfigError;
    }
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error &e) {
        err << "error: trace does not parse: " << e.what() << '\n';
        return kConfigError;
    }
    try {
        const ReplayResult r = replay_trace(doc);
        if (!r.ok) {
            out << "DIVERGED: " << r.message << '\n';
            return kVerificationFailed;
        }
        out << "OK " << r.replayed_hash << '\n';
        return kOk;
    } catch (const LocalityViolation &e) {
        err << "locality violation during replay: " << e.what() << '\n';
        return kLocalityViolation;
    }
}

} // namespace telegate::cli
