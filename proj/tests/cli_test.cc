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

#include <filesystem>
#include <fstream>
#include <sstream>

#include "gtest/gtest.h"
#include "tcqkd_cli/commands.h"
#include "tcqkd_cli/serialization.h"

using namespace tcqkd;
using namespace tcqkd::cli;
namespace fs = std::filesystem;

namespace {

class CliTest : public ::testing::Test {
   protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() /
               ("tcqkd_cli_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override {
        fs::remove_all(dir_);
    }

    std::string write(const std::string &name, const std::string &contents) {
        auto p = dir_ / name;
        std::ofstream(p) << contents;
        return p.string();
    }
    std::string path(const std::string &name) const {
        return (dir_ / name).string();
    }
    static std::string slurp(const std::string &p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
    static std::vector<std::vector<std::string>> csv(const std::string &text) {
        std::vector<std::vector<std::string>> rows;
        std::stringstream lines(text);
        std::string line;
        while (std::getline(lines, line)) {
            std::vector<std::string> cells;
            std::stringstream cs(line);
            std::string cell;
            while (std::getline(cs, cell, ',')) {
                cells.push_back(cell);
            }
            rows.push_back(cells);
        }
        return rows;
    }

    fs::path dir_;
    std::stringstream out_;
    std::stringstream err_;
};

const char *kHonestConfig = R"({
  "n_pulses": 100000,
  "encoder": {"pulse_duration": 1.0, "delays": [0.0, 0.5]},
  "channel": {"transmittance": 1.0, "dark_count_prob": 0.0},
  "eve": {"strategy": "none"},
  "reveal_fraction": 1.0,
  "seed": 12
})";

}  // namespace

TEST(config_json, round_trip) {
    SessionConfig cfg;
    cfg.n_pulses = 1234;
    cfg.encoder = {0.8, {0.0, 0.3, 0.7}};
    cfg.channel = {0.9, 0.01};
    cfg.eve = ResendFull{AmbiguousPolicy::Suppress};
    cfg.intercept_fraction = 0.3;
    cfg.mz = {0.4, 2.5};
    cfg.p_route_mz = 0.25;
    cfg.reveal_fraction = 0.1;
    cfg.confidence_level = 0.99;
    cfg.mz_alpha = 0.05;
    cfg.seed = 18446744073709551615ULL;
    ASSERT_EQ(config_from_json(config_to_json(cfg)), cfg);
    ASSERT_EQ(parse_config(config_to_json(cfg).dump()), cfg);

    cfg.eve = ResendShort{0.02};
    ASSERT_EQ(parse_config(config_to_json(cfg).dump()), cfg);
}

TEST(config_json, defaults_and_strictness) {
    ASSERT_EQ(parse_config("{}"), SessionConfig{});

    auto expect_error = [](const std::string &text, const std::string &needle) {
        try {
            parse_config(text);
            FAIL() << "accepted " << text;
        } catch (const ConfigError &e) {
            ASSERT_NE(std::string(e.what()).find(needle), std::string::npos) << e.what();
        }
    };
    expect_error(R"({"n_pulse": 5})", "n_pulse: unknown field");
    expect_error(R"({"channel": {"transmitance": 0.5}})", "channel.transmitance: unknown field");
    expect_error(R"({"channel": {"transmittance": 1.5}})", "channel.transmittance");
    expect_error(R"({"channel": {"transmittance": "high"}})", "channel.transmittance: expected a number");
    expect_error(R"({"n_pulses": -3})", "n_pulses");
    expect_error(R"({"eve": {"strategy": "clone"}})", "eve.strategy");
    expect_error(R"({"eve": {"strategy": "resend_full", "pulse_duration": 0.1}})", "eve.pulse_duration: unknown");
    expect_error(R"({"encoder": {"delays": [0.0]}})", "encoder.delays");
    expect_error("{not json", "not valid JSON");
}

TEST_F(CliTest, run_honest_reports_zero_qber) {
    RunOptions opts;
    opts.config_path = write("honest.json", kHonestConfig);
    opts.output_path = path("report.json");
    ASSERT_EQ(cmd_run(opts, out_, err_), 0) << err_.str();
    std::string text = slurp(opts.output_path);
    ASSERT_NE(text.find("\"qber\": 0.0"), std::string::npos);
    auto rep = parse_report(text);
    ASSERT_EQ(rep.qber->qber, 0.0);
    ASSERT_EQ(rep.verdict.decision, Decision::Honest);
}

TEST_F(CliTest, run_resend_full_override) {
    RunOptions opts;
    opts.config_path = write("honest.json", kHonestConfig);
    opts.overrides.eve = "resend_full";
    opts.output_path = path("report.json");
    ASSERT_EQ(cmd_run(opts, out_, err_), 0) << err_.str();
    auto rep = parse_report(slurp(opts.output_path));
    ASSERT_TRUE(std::holds_alternative<ResendFull>(rep.config.eve));
    ASSERT_GE(rep.qber->qber, 0.24);
    ASSERT_LE(rep.qber->qber, 0.26);
}

TEST_F(CliTest, run_bad_config_fails_without_output) {
    RunOptions opts;
    opts.config_path = write("bad.json", R"({"channel": {"transmittance": 1.5}})");
    opts.output_path = path("report.json");
    ASSERT_NE(cmd_run(opts, out_, err_), 0);
    ASSERT_NE(err_.str().find("channel.transmittance"), std::string::npos);
    ASSERT_FALSE(fs::exists(opts.output_path));

    opts.config_path = path("missing.json");
    ASSERT_NE(cmd_run(opts, out_, err_), 0);
    ASSERT_FALSE(fs::exists(opts.output_path));
}

TEST_F(CliTest, run_overrides_and_csv) {
    RunOptions opts;
    opts.config_path = write("honest.json", kHonestConfig);
    opts.overrides.seed = 99;
    opts.overrides.n_pulses = 5000;
    opts.format = OutputFormat::Csv;
    ASSERT_EQ(cmd_run(opts, out_, err_), 0) << err_.str();
    auto rows = csv(out_.str());
    ASSERT_EQ(rows.size(), 2);
    ASSERT_EQ(out_.str().substr(0, out_.str().find('\n')), kRunCsvHeader);
    ASSERT_EQ(rows[1][0], "99");
    ASSERT_EQ(rows[1][1], "5000");
    ASSERT_EQ(rows[1][3], "0");
    ASSERT_EQ(rows[1][8], "honest");
}

TEST_F(CliTest, report_round_trip) {
    SessionConfig cfg;
    cfg.n_pulses = 4000;
    cfg.eve = ResendShort{0.05};
    cfg.channel = {0.9, 0.02};
    auto rep = run_session(cfg);
    ASSERT_EQ(parse_report(dump_report(rep)), rep);

    // More than ten symbols: keys serialize as arrays.
    cfg.eve = ResendFull{};
    cfg.encoder.delays.clear();
    for (int k = 0; k < 12; k++) {
        cfg.encoder.delays.push_back(0.6 * k);
    }
    rep = run_session(cfg);
    ASSERT_FALSE(rep.final_key_alice.empty());
    ASSERT_TRUE(report_to_json(rep)["final_key"]["alice"].is_array());
    ASSERT_EQ(parse_report(dump_report(rep)), rep);

    // No sifted bits: qber is null.
    cfg.channel.transmittance = 0;
    cfg.channel.dark_count_prob = 0;
    rep = run_session(cfg);
    ASSERT_TRUE(report_to_json(rep)["qber"].is_null());
    ASSERT_EQ(parse_report(dump_report(rep)), rep);
}

TEST_F(CliTest, report_reader_rejects_tampering) {
    auto j = report_to_json(run_session(SessionConfig{.n_pulses = 100}));
    auto bad = j;
    bad["extra"] = 1;
    ASSERT_THROW(report_from_json(bad), ConfigError);
    bad = j;
    bad["format"] = "other";
    ASSERT_THROW(report_from_json(bad), ConfigError);
    bad = j;
    bad["counts"].erase("lost");
    ASSERT_THROW(report_from_json(bad), ConfigError);
}

TEST_F(CliTest, identical_invocations_are_byte_identical) {
    RunOptions opts;
    opts.config_path = write("honest.json", kHonestConfig);
    opts.overrides.eve = "resend_short";
    opts.overrides.n_pulses = 20000;
    opts.output_path = path("a.json");
    ASSERT_EQ(cmd_run(opts, out_, err_), 0);
    opts.output_path = path("b.json");
    opts.threads = 4;
    ASSERT_EQ(cmd_run(opts, out_, err_), 0);
    ASSERT_EQ(slurp(path("a.json")), slurp(path("b.json")));
}

TEST_F(CliTest, sweep_resend_pulse_duration) {
    SweepSpec spec;
    spec.config_path = write(
        "short.json", R"({"n_pulses": 100000, "eve": {"strategy": "resend_short", "pulse_duration": 0.01}, "seed": 3})");
    spec.parameter = "eve.pulse_duration";
    spec.from = 0.01;
    spec.to = 1.0;
    spec.steps = 5;
    spec.output_path = path("sweep.csv");
    ASSERT_EQ(cmd_sweep(spec, out_, err_), 0) << err_.str();
    std::string text = slurp(spec.output_path);
    ASSERT_EQ(text.substr(0, text.find('\n')), kSweepCsvHeader);
    auto rows = csv(text);
    ASSERT_EQ(rows.size(), 6);
    std::vector<double> values = sweep_values(0.01, 1.0, 5);
    double prev = 1;
    for (size_t k = 1; k < rows.size(); k++) {
        double d = values[k - 1];
        ASSERT_EQ(std::stod(rows[k][0]), d);
        ASSERT_EQ(rows[k][1], std::to_string(sweep_seed(3, k - 1, 0)));
        double pa = std::stod(rows[k][6]);
        ASSERT_NEAR(pa, (1 - std::max(0.0, 1 - 0.5 / d)) / 2, 0.01) << d;
        ASSERT_LE(pa, prev + 0.01);
        prev = pa;
    }
    ASSERT_NEAR(std::stod(rows[1][6]), 0.5, 0.01);
    ASSERT_NEAR(std::stod(rows[5][6]), 0.25, 0.01);
}

TEST_F(CliTest, sweep_intercept_fraction_with_reps) {
    SweepSpec spec;
    spec.config_path = write(
        "full.json",
        R"({"n_pulses": 40000, "eve": {"strategy": "resend_full"}, "reveal_fraction": 1.0, "seed": 1})");
    spec.parameter = "intercept_fraction";
    spec.from = 0;
    spec.to = 1;
    spec.steps = 3;
    spec.repetitions = 2;
    spec.output_path = path("sweep.csv");
    ASSERT_EQ(cmd_sweep(spec, out_, err_), 0) << err_.str();
    auto rows = csv(slurp(spec.output_path));
    ASSERT_EQ(rows.size(), 7);
    ASSERT_EQ(rows[1][1], "1");
    ASSERT_EQ(rows[2][1], "2");
    ASSERT_EQ(rows[3][1], "1000001");
    ASSERT_EQ(rows[6][1], "2000002");
    for (size_t k = 1; k < rows.size(); k++) {
        ASSERT_NEAR(std::stod(rows[k][3]), std::stod(rows[k][0]) / 4, 0.015);
    }
}

TEST_F(CliTest, sweep_validation_errors) {
    SweepSpec spec;
    spec.config_path = write("full.json", R"({"n_pulses": 1000, "eve": {"strategy": "resend_full"}})");
    spec.parameter = "intercept_fraction";
    spec.from = 0;
    spec.to = 1;
    spec.output_path = path("sweep.csv");

    spec.steps = 1;
    ASSERT_NE(cmd_sweep(spec, out_, err_), 0);
    ASSERT_NE(err_.str().find("--steps"), std::string::npos);

    spec.steps = 3;
    spec.parameter = "mz.arm_delay";
    ASSERT_NE(cmd_sweep(spec, out_, err_), 0);

    spec.parameter = "eve.pulse_duration";
    ASSERT_NE(cmd_sweep(spec, out_, err_), 0);
    ASSERT_NE(err_.str().find("resend_short"), std::string::npos);

    spec.parameter = "channel.transmittance";
    spec.to = 1.5;
    ASSERT_NE(cmd_sweep(spec, out_, err_), 0);
    ASSERT_NE(err_.str().find("channel.transmittance"), std::string::npos);

    spec.to = 0.5;
    spec.from = 0.9;
    ASSERT_NE(cmd_sweep(spec, out_, err_), 0);

    ASSERT_FALSE(fs::exists(spec.output_path));
}

TEST(csv_format, seventeen_digits) {
    ASSERT_EQ(format_double(0.1), "0.10000000000000001");
    ASSERT_EQ(format_double(0.25), "0.25");
    ASSERT_EQ(format_double(0), "0");
}
