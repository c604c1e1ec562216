// Copyright 2026 The tcqkd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>

#include "CLI11.hpp"
#include "tcqkd_cli/commands.h"

using namespace tcqkd::cli;

namespace {

void add_overrides(CLI::App *cmd, Overrides &o, unsigned &threads) {
    cmd->add_option("--seed", o.seed, "Override the session seed");
    cmd->add_option("--pulses", o.n_pulses, "Override n_pulses");
    cmd->add_option("--eve", o.eve, "Override the attack strategy")
        ->check(CLI::IsMember({"none", "resend_full", "resend_short"}));
    cmd->add_option("--threads", threads, "Worker threads per session (0 = all cores)");
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Monte Carlo simulator for time-coded quantum key distribution"};
    app.require_subcommand(1);

    RunOptions run;
    std::string run_format = "json";
    auto *run_cmd = app.add_subcommand("run", "Run one session and write its report");
    run_cmd->add_option("--config", run.config_path, "Session config (JSON)")->required();
    run_cmd->add_option("--out", run.output_path, "Output file (default: stdout)");
    run_cmd->add_option("--format", run_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    add_overrides(run_cmd, run.overrides, run.threads);

    SweepSpec sweep;
    auto *sweep_cmd = app.add_subcommand("sweep", "Sweep one parameter and write a CSV table");
    sweep_cmd->add_option("--config", sweep.config_path, "Base session config (JSON)")->required();
    sweep_cmd->add_option("--param", sweep.parameter, "Parameter to sweep")->required();
    sweep_cmd->add_option("--from", sweep.from, "First value")->required();
    sweep_cmd->add_option("--to", sweep.to, "Last value")->required();
    sweep_cmd->add_option("--steps", sweep.steps, "Number of values, at least 2")->required();
    sweep_cmd->add_option("--reps", sweep.repetitions, "Sessions per value");
    sweep_cmd->add_option("--out", sweep.output_path, "Output CSV file")->required();
    add_overrides(sweep_cmd, sweep.overrides, sweep.threads);

    CLI11_PARSE(app, argc, argv);

    if (run_cmd->parsed()) {
        run.format = run_format == "csv" ? OutputFormat::Csv : OutputFormat::Json;
        return cmd_run(run, std::cout, std::cerr);
    }
    return cmd_sweep(sweep, std::cout, std::cerr);
}
