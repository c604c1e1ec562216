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

#ifndef TCQKD_CLI_COMMANDS_H
#define TCQKD_CLI_COMMANDS_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tcqkd/session.h"

namespace tcqkd::cli {

enum class OutputFormat { Json, Csv };

/// Command-line overrides applied on top of a config file.
struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> n_pulses;
    /// none | resend_full | resend_short
    std::optional<std::string> eve;
};

struct RunOptions {
    std::string config_path;
    Overrides overrides;
    /// Empty writes to the output stream.
    std::string output_path;
    OutputFormat format = OutputFormat::Json;
    unsigned threads = 1;
};

/// One of the sweepable parameter names listed in kSweepParameters.
struct SweepSpec {
    std::string config_path;
    Overrides overrides;
    std::string parameter;
    double from = 0;
    double to = 0;
    std::uint64_t steps = 2;
    std::uint64_t repetitions = 1;
    std::string output_path;
    unsigned threads = 1;
};

inline constexpr const char *kSweepParameters[] = {
    "intercept_fraction",
    "eve.pulse_duration",
    "channel.transmittance",
    "n_pulses",
};

/// Fixed column order of the CSV outputs.
inline constexpr const char *kSweepCsvHeader =
    "parameter_value,seed,sifted_len,qber,qber_lo,qber_hi,portA_frac,p_value,verdict";
inline constexpr const char *kRunCsvHeader =
    "seed,n_pulses,sifted_len,qber,qber_lo,qber_hi,portA_frac,p_value,verdict";

SessionConfig load_config(const std::string &path, const Overrides &overrides);

/// Sets one sweepable parameter on cfg. Throws ConfigError for unknown names
/// or when the parameter does not apply (eve.pulse_duration needs a
/// resend_short strategy).
void apply_sweep_parameter(SessionConfig &cfg, const std::string &name, double value);

/// Values visited by a sweep: from + (to - from) * i / (steps - 1).
std::vector<double> sweep_values(double from, double to, std::uint64_t steps);

/// Row seed: base + step * 1e6 + repetition.
std::uint64_t sweep_seed(std::uint64_t base, std::uint64_t step, std::uint64_t repetition);

/// CSV row fields after the leading parameter/seed columns.
std::string csv_result_fields(const SessionReport &report);

/// Both commands return a process exit status. Diagnostics go to err, and no
/// output file is created when the inputs are invalid.
int cmd_run(const RunOptions &opts, std::ostream &out, std::ostream &err);
int cmd_sweep(const SweepSpec &spec, std::ostream &out, std::ostream &err);

}  // namespace tcqkd::cli

#endif  // TCQKD_CLI_COMMANDS_H
