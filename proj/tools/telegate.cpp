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

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "telegate/cli.hpp"

int main(int argc, char **argv) {
    namespace cli = telegate::cli;

    CLI::App app{"telegate: gate teleportation over parallel and series Bell networks"};
    app.require_subcommand(1);

    cli::RunConfig config;
    auto *run = app.add_subcommand("run", "verify a protocol by exhaustive branch enumeration");
    run->add_option("--family", config.family, "parallel-cu | series-ch | series-ncu")->required();
    run->add_option("--n", config.n, "number of parties (>= 2)")->required();
    run->add_option("--payload", config.payload,
                    "X | Z | H | I | randU:<seed> | randH:<seed> | matrix:[[..],[..]]")
        ->capture_default_str();
    run->add_option("--inputs", config.inputs,
                    "basis-sweep | random:<count> | literal:[[re,im],...]")
        ->capture_default_str();
    run->add_option("--seed", config.seed, "seed for random inputs and the traced branch")
        ->capture_default_str();
    run->add_option("--trace-out", config.trace_out, "write the trace of one branch here");
    run->add_option("--report-out", config.report_out, "write the verification report here");

    std::string costs_family;
    int n_max = 6;
    auto *costs = app.add_subcommand("costs", "print measured vs closed-form ebit/cbit costs");
    costs->add_option("--family", costs_family, "restrict to one family");
    costs->add_option("--n-max", n_max, "largest party count")->capture_default_str();

    std::string trace_path;
    auto *replay = app.add_subcommand("replay", "re-execute a recorded trace");
    replay->add_option("trace", trace_path, "trace JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return cli::kConfigError;
    }

    if (*run) {
        return cli::cmd_run(config, std::cout, std::cerr);
    }
    if (*costs) {
        return cli::cmd_costs(costs_family, n_max, std::cout, std::cerr);
    }
    return cli::cmd_replay(trace_path, std::cout, std::cerr);
}
