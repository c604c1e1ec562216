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

#include "tcqkd_cli/commands.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "tcqkd_cli/serialization.h"

namespace tcqkd::cli {

namespace {

std::string read_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read config file '" + path + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void apply_eve_override(SessionConfig &cfg, const std::string &name) {
    if (name == eve_strategy_name(cfg.eve)) {
        return;
    }
    if (name == "none") {
        cfg.eve = NoEve{};
    } else if (name == "resend_full") {
        cfg.eve = ResendFull{};
    } else if (name == "resend_short") {
        cfg.eve = ResendShort{};
    } else {
        throw ConfigError("--eve: expected none, resend_full or resend_short, got " + name);
    }
}

void validate_or_throw(const SessionConfig &cfg) {
    try {
        cfg.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
}

/// Writes next to the destination and renames, so a failure never leaves a
/// truncated file behind.
void write_atomically(const std::string &path, const std::string &contents) {
    std::filesystem::path dest(path);
    std::filesystem::path tmp = dest;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error("cannot write output file '" + path + "'");
        }
        out << contents;
        out.flush();
        if (!out) {
            std::filesystem::remove(tmp);
            throw std::runtime_error("failed writing output file '" + path + "'");
        }
    }
    std::filesystem::rename(tmp, dest);
}

void emit(const std::string &path, const std::string &contents, std::ostream &out) {
    if (path.empty()) {
        out << contents;
    } else {
        write_atomically(path, contents);
    }
}

}  // namespace

SessionConfig load_config(const std::string &path, const Overrides &overrides) {
    SessionConfig cfg = parse_config(read_file(path));
    if (overrides.seed) {
        cfg.seed = *overrides.seed;
    }
    if (overrides.n_pulses) {
        cfg.n_pulses = *overrides.n_pulses;
    }
    if (overrides.eve) {
        apply_eve_override(cfg, *overrides.eve);
    }
    validate_or_throw(cfg);
    return cfg;
}

void apply_sweep_parameter(SessionConfig &cfg, const std::string &name, double value) {
    if (name == "intercept_fraction") {
        cfg.intercept_fraction = value;
    } else if (name == "eve.pulse_duration") {
        auto *s = std::get_if<ResendShort>(&cfg.eve);
        if (s == nullptr) {
            throw ConfigError("eve.pulse_duration: sweeping it requires eve.strategy resend_short");
        }
        s->pulse_duration = value;
    } else if (name == "channel.transmittance") {
        cfg.channel.transmittance = value;
    } else if (name == "n_pulses") {
        if (!(value >= 1)) {
            throw ConfigError("n_pulses: sweep values must be at least 1");
        }
        cfg.n_pulses = static_cast<std::uint64_t>(std::llround(value));
    } else {
        std::string allowed;
        for (const char *p : kSweepParameters) {
            allowed += allowed.empty() ? "" : ", ";
            allowed += p;
        }
        throw ConfigError("--param: unknown parameter '" + name + "' (allowed: " + allowed + ")");
    }
}

std::vector<double> sweep_values(double from, double to, std::uint64_t steps) {
    if (steps < 2) {
        throw ConfigError("--steps: must be at least 2");
    }
    if (!std::isfinite(from) || !std::isfinite(to) || from > to) {
        throw ConfigError("--from/--to: need finite values with from <= to");
    }
    std::vector<double> values(steps);
    for (std::uint64_t i = 0; i < steps; i++) {
        values[i] = from + (to - from) * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
    values.back() = to;
    return values;
}

std::uint64_t sweep_seed(std::uint64_t base, std::uint64_t step, std::uint64_t repetition) {
    return base + step * 1000000 + repetition;
}

std::string csv_result_fields(const SessionReport &report) {
    std::string row = std::to_string(report.sifted_length) + ",";
    if (report.qber) {
        row += format_double(report.qber->qber) + "," + format_double(report.qber->confidence_interval.lo) + "," +
               format_double(report.qber->confidence_interval.hi);
    } else {
        row += ",,";
    }
    row += "," + format_double(report.mz.port_a_fraction);
    row += "," + format_double(report.verdict.p_value);
    row += "," + std::string(decision_name(report.verdict.decision));
    return row;
}

int cmd_run(const RunOptions &opts, std::ostream &out, std::ostream &err) {
    try {
        SessionConfig cfg = load_config(opts.config_path, opts.overrides);
        SessionReport report = run_session(cfg, ExecutionOptions{opts.threads});
        for (const auto &w : report.warnings) {
            err << "warning: " << w << "\n";
        }

        std::string text;
        if (opts.format == OutputFormat::Json) {
            text = dump_report(report);
        } else {
            text = std::string(kRunCsvHeader) + "\n" + std::to_string(cfg.seed) + "," + std::to_string(cfg.n_pulses) +
                   "," + csv_result_fields(report) + "\n";
        }
        emit(opts.output_path, text, out);
        return 0;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

int cmd_sweep(const SweepSpec &spec, std::ostream &out, std::ostream &err) {
    try {
        if (spec.repetitions < 1) {
            throw ConfigError("--reps: must be at least 1");
        }
        SessionConfig base = load_config(spec.config_path, spec.overrides);
        std::vector<double> values = sweep_values(spec.from, spec.to, spec.steps);

        // Build and validate every row's config before simulating anything.
        struct Row {
            double value;
            SessionConfig cfg;
        };
        std::vector<Row> rows;
        for (std::uint64_t step = 0; step < values.size(); step++) {
            for (std::uint64_t rep = 0; rep < spec.repetitions; rep++) {
                SessionConfig cfg = base;
                apply_sweep_parameter(cfg, spec.parameter, values[step]);
                cfg.seed = sweep_seed(base.seed, step, rep);
                try {
                    cfg.validate();
                } catch (const std::invalid_argument &e) {
                    throw ConfigError(std::string(e.what()) + " (sweep value " + format_double(values[step]) + ")");
                }
                rows.push_back({values[step], std::move(cfg)});
            }
        }

        std::string text = std::string(kSweepCsvHeader) + "\n";
        std::vector<std::string> seen_warnings;
        for (const auto &row : rows) {
            SessionReport report = run_session(row.cfg, ExecutionOptions{spec.threads});
            for (const auto &w : report.warnings) {
                if (std::find(seen_warnings.begin(), seen_warnings.end(), w) == seen_warnings.end()) {
                    err << "warning: " << w << "\n";
                    seen_warnings.push_back(w);
                }
            }
            text += format_double(row.value) + "," + std::to_string(row.cfg.seed) + "," + csv_result_fields(report) +
                    "\n";
        }
        emit(spec.output_path, text, out);
        return 0;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace tcqkd::cli
