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

#include "tcqkd_cli/serialization.h"

#include <cstdio>
#include <set>

namespace tcqkd::cli {

using nlohmann::json;

namespace {

constexpr const char *kReportFormat = "tcqkd-report";
constexpr int kReportVersion = 1;

std::string join(const std::string &path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

/// Reads fields out of a JSON object, remembering which keys were consumed so
/// leftovers can be reported as unknown.
class ObjectReader {
   public:
    ObjectReader(const json &j, std::string path) : j_(j), path_(std::move(path)) {
        if (!j_.is_object()) {
            throw ConfigError((path_.empty() ? std::string("document") : path_) + ": expected an object");
        }
    }

    bool has(std::string_view key) const {
        return j_.contains(key);
    }

    const json &raw(std::string_view key) {
        auto it = j_.find(key);
        if (it == j_.end()) {
            throw ConfigError(join(path_, key) + ": missing required field");
        }
        consumed_.insert(std::string(key));
        return *it;
    }

    double number(std::string_view key, double fallback) {
        return has(key) ? number(key) : fallback;
    }
    double number(std::string_view key) {
        const json &v = raw(key);
        if (!v.is_number()) {
            throw ConfigError(join(path_, key) + ": expected a number");
        }
        return v.get<double>();
    }

    std::uint64_t count(std::string_view key, std::uint64_t fallback) {
        return has(key) ? count(key) : fallback;
    }
    std::uint64_t count(std::string_view key) {
        const json &v = raw(key);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
            throw ConfigError(join(path_, key) + ": expected a non-negative integer");
        }
        return v.get<std::uint64_t>();
    }

    std::string string(std::string_view key, std::string fallback) {
        return has(key) ? string(key) : fallback;
    }
    std::string string(std::string_view key) {
        const json &v = raw(key);
        if (!v.is_string()) {
            throw ConfigError(join(path_, key) + ": expected a string");
        }
        return v.get<std::string>();
    }

    ObjectReader object(std::string_view key) {
        return ObjectReader(raw(key), join(path_, key));
    }

    const std::string &path() const {
        return path_;
    }

    void finish() const {
        for (auto it = j_.begin(); it != j_.end(); ++it) {
            if (!consumed_.contains(it.key())) {
                throw ConfigError(join(path_, it.key()) + ": unknown field");
            }
        }
    }

   private:
    const json &j_;
    std::string path_;
    std::set<std::string> consumed_;
};

EncoderConfig read_encoder(ObjectReader r) {
    EncoderConfig e;
    e.pulse_duration = r.number("pulse_duration", e.pulse_duration);
    if (r.has("delays")) {
        const json &d = r.raw("delays");
        if (!d.is_array()) {
            throw ConfigError(join(r.path(), "delays") + ": expected an array of numbers");
        }
        e.delays.clear();
        for (const auto &v : d) {
            if (!v.is_number()) {
                throw ConfigError(join(r.path(), "delays") + ": expected an array of numbers");
            }
            e.delays.push_back(v.get<double>());
        }
    }
    r.finish();
    return e;
}

ChannelConfig read_channel(ObjectReader r) {
    ChannelConfig c;
    c.transmittance = r.number("transmittance", c.transmittance);
    c.dark_count_prob = r.number("dark_count_prob", c.dark_count_prob);
    r.finish();
    return c;
}

InterferometerConfig read_mz(ObjectReader r) {
    InterferometerConfig m;
    m.arm_delay = r.number("arm_delay", m.arm_delay);
    m.arm_phase = r.number("arm_phase", m.arm_phase);
    r.finish();
    return m;
}

EveStrategy read_eve(ObjectReader r) {
    std::string name = r.string("strategy", "none");
    EveStrategy eve;
    if (name == "none") {
        eve = NoEve{};
    } else if (name == "resend_full") {
        ResendFull full;
        std::string policy = r.string("ambiguous_policy", "guess_uniform");
        if (policy == "guess_uniform") {
            full.ambiguous_policy = AmbiguousPolicy::GuessUniform;
        } else if (policy == "suppress") {
            full.ambiguous_policy = AmbiguousPolicy::Suppress;
        } else {
            throw ConfigError(
                join(r.path(), "ambiguous_policy") + ": expected guess_uniform or suppress, got " + policy);
        }
        eve = full;
    } else if (name == "resend_short") {
        ResendShort s;
        s.pulse_duration = r.number("pulse_duration", s.pulse_duration);
        eve = s;
    } else {
        throw ConfigError(
            join(r.path(), "strategy") + ": expected none, resend_full or resend_short, got " + name);
    }
    r.finish();
    return eve;
}

json eve_to_json(const EveStrategy &eve) {
    json j;
    j["strategy"] = std::string(eve_strategy_name(eve));
    if (const auto *f = std::get_if<ResendFull>(&eve)) {
        j["ambiguous_policy"] = f->ambiguous_policy == AmbiguousPolicy::Suppress ? "suppress" : "guess_uniform";
    } else if (const auto *s = std::get_if<ResendShort>(&eve)) {
        j["pulse_duration"] = s->pulse_duration;
    }
    return j;
}

json key_to_json(const std::vector<Symbol> &key, size_t num_symbols) {
    if (num_symbols <= 10) {
        std::string s;
        s.reserve(key.size());
        for (auto k : key) {
            s.push_back(static_cast<char>('0' + k));
        }
        return s;
    }
    return key;
}

std::vector<Symbol> key_from_json(const json &j, const std::string &path) {
    std::vector<Symbol> key;
    if (j.is_string()) {
        for (char c : j.get<std::string>()) {
            if (c < '0' || c > '9') {
                throw ConfigError(path + ": key strings may only contain digits");
            }
            key.push_back(static_cast<Symbol>(c - '0'));
        }
        return key;
    }
    if (j.is_array()) {
        return j.get<std::vector<Symbol>>();
    }
    throw ConfigError(path + ": expected a digit string or an array");
}

Decision decision_from_name(const std::string &name) {
    if (name == "honest") {
        return Decision::Honest;
    }
    if (name == "attack_suspected") {
        return Decision::AttackSuspected;
    }
    throw ConfigError("verdict.decision: unknown value " + name);
}

std::vector<std::uint64_t> u64_array(const json &j, const std::string &path) {
    if (!j.is_array()) {
        throw ConfigError(path + ": expected an array");
    }
    return j.get<std::vector<std::uint64_t>>();
}

}  // namespace

std::string_view decision_name(Decision d) {
    return d == Decision::AttackSuspected ? "attack_suspected" : "honest";
}

std::string_view eve_strategy_name(const EveStrategy &eve) {
    if (std::holds_alternative<ResendFull>(eve)) {
        return "resend_full";
    }
    if (std::holds_alternative<ResendShort>(eve)) {
        return "resend_short";
    }
    return "none";
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

SessionConfig config_from_json(const json &j) {
    ObjectReader r(j, "");
    SessionConfig cfg;
    cfg.n_pulses = r.count("n_pulses", cfg.n_pulses);
    if (r.has("encoder")) {
        cfg.encoder = read_encoder(r.object("encoder"));
    }
    if (r.has("channel")) {
        cfg.channel = read_channel(r.object("channel"));
    }
    if (r.has("eve")) {
        cfg.eve = read_eve(r.object("eve"));
    }
    cfg.intercept_fraction = r.number("intercept_fraction", cfg.intercept_fraction);
    if (r.has("mz")) {
        cfg.mz = read_mz(r.object("mz"));
    }
    cfg.p_route_mz = r.number("p_route_mz", cfg.p_route_mz);
    cfg.reveal_fraction = r.number("reveal_fraction", cfg.reveal_fraction);
    cfg.confidence_level = r.number("confidence_level", cfg.confidence_level);
    cfg.mz_alpha = r.number("mz_alpha", cfg.mz_alpha);
    cfg.seed = r.count("seed", cfg.seed);
    r.finish();

    try {
        cfg.validate();
    } catch (const std::invalid_argument &e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

SessionConfig parse_config(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    return config_from_json(j);
}

json config_to_json(const SessionConfig &cfg) {
    json j;
    j["n_pulses"] = cfg.n_pulses;
    j["encoder"] = {{"pulse_duration", cfg.encoder.pulse_duration}, {"delays", cfg.encoder.delays}};
    j["channel"] = {{"transmittance", cfg.channel.transmittance}, {"dark_count_prob", cfg.channel.dark_count_prob}};
    j["eve"] = eve_to_json(cfg.eve);
    j["intercept_fraction"] = cfg.intercept_fraction;
    j["mz"] = {{"arm_delay", cfg.mz.arm_delay}, {"arm_phase", cfg.mz.arm_phase}};
    j["p_route_mz"] = cfg.p_route_mz;
    j["reveal_fraction"] = cfg.reveal_fraction;
    j["confidence_level"] = cfg.confidence_level;
    j["mz_alpha"] = cfg.mz_alpha;
    j["seed"] = cfg.seed;
    return j;
}

json report_to_json(const SessionReport &report) {
    json j;
    j["format"] = kReportFormat;
    j["version"] = kReportVersion;
    j["config"] = config_to_json(report.config);

    const auto &c = report.counts;
    j["counts"] = {
        {"emitted", c.emitted},
        {"intercepted", c.intercepted},
        {"suppressed_by_eve", c.suppressed_by_eve},
        {"lost", c.lost},
        {"routed_to_key", c.routed_to_key},
        {"routed_to_mz", c.routed_to_mz},
        {"dark_counts", c.dark_counts},
        {"decoded", c.decoded},
        {"ambiguous", c.ambiguous},
        {"no_candidate", c.no_candidate},
    };
    j["sifted_length"] = report.sifted_length;
    j["sifted_error_rate"] = report.sifted_error_rate;
    j["expected_sift_fraction"] = report.expected_sift_fraction;
    if (report.qber) {
        const auto &q = *report.qber;
        j["qber"] = q.qber;
        j["qber_estimate"] = {
            {"revealed", q.revealed},
            {"errors", q.errors},
            {"qber", q.qber},
            {"confidence_level", q.confidence_level},
            {"lo", q.confidence_interval.lo},
            {"hi", q.confidence_interval.hi},
            {"revealed_positions", q.revealed_positions},
        };
    } else {
        j["qber"] = nullptr;
        j["qber_estimate"] = nullptr;
    }
    j["mz"] = {
        {"port_a", report.mz.port_a},
        {"port_b", report.mz.port_b},
        {"port_a_fraction", report.mz.port_a_fraction},
        {"port_a_lo", report.mz.port_a_interval.lo},
        {"port_a_hi", report.mz.port_a_interval.hi},
        {"expected_port_a_honest", report.mz.expected_port_a_honest},
    };
    j["verdict"] = {
        {"decision", std::string(decision_name(report.verdict.decision))},
        {"p_value", report.verdict.p_value},
    };
    size_t num_symbols = report.config.encoder.num_symbols();
    j["final_key"] = {
        {"alice", key_to_json(report.final_key_alice, num_symbols)},
        {"bob", key_to_json(report.final_key_bob, num_symbols)},
    };
    j["warnings"] = report.warnings;
    return j;
}

SessionReport report_from_json(const json &j) {
    try {
        ObjectReader r(j, "");
        if (r.string("format") != kReportFormat) {
            throw ConfigError("format: not a tcqkd report");
        }
        if (r.count("version") != static_cast<std::uint64_t>(kReportVersion)) {
            throw ConfigError("version: unsupported report version");
        }

        SessionReport rep;
        rep.config = config_from_json(r.raw("config"));

        ObjectReader c = r.object("counts");
        rep.counts.emitted = c.count("emitted");
        rep.counts.intercepted = c.count("intercepted");
        rep.counts.suppressed_by_eve = c.count("suppressed_by_eve");
        rep.counts.lost = c.count("lost");
        rep.counts.routed_to_key = c.count("routed_to_key");
        rep.counts.routed_to_mz = c.count("routed_to_mz");
        rep.counts.dark_counts = c.count("dark_counts");
        rep.counts.decoded = c.count("decoded");
        rep.counts.ambiguous = c.count("ambiguous");
        rep.counts.no_candidate = c.count("no_candidate");
        c.finish();

        rep.sifted_length = r.count("sifted_length");
        rep.sifted_error_rate = r.number("sifted_error_rate");
        rep.expected_sift_fraction = r.number("expected_sift_fraction");

        const json &qber = r.raw("qber");
        const json &est = r.raw("qber_estimate");
        if (!est.is_null()) {
            ObjectReader q(est, "qber_estimate");
            QberEstimate e;
            e.revealed = q.count("revealed");
            e.errors = q.count("errors");
            e.qber = q.number("qber");
            e.confidence_level = q.number("confidence_level");
            e.confidence_interval.lo = q.number("lo");
            e.confidence_interval.hi = q.number("hi");
            e.revealed_positions = u64_array(q.raw("revealed_positions"), "qber_estimate.revealed_positions");
            q.finish();
            if (!qber.is_number() || qber.get<double>() != e.qber) {
                throw ConfigError("qber: does not match qber_estimate.qber");
            }
            rep.qber = std::move(e);
        } else if (!qber.is_null()) {
            throw ConfigError("qber: must be null when qber_estimate is null");
        }

        ObjectReader m = r.object("mz");
        rep.mz.port_a = m.count("port_a");
        rep.mz.port_b = m.count("port_b");
        rep.mz.port_a_fraction = m.number("port_a_fraction");
        rep.mz.port_a_interval.lo = m.number("port_a_lo");
        rep.mz.port_a_interval.hi = m.number("port_a_hi");
        rep.mz.expected_port_a_honest = m.number("expected_port_a_honest");
        m.finish();

        ObjectReader v = r.object("verdict");
        rep.verdict.decision = decision_from_name(v.string("decision"));
        rep.verdict.p_value = v.number("p_value");
        v.finish();

        ObjectReader k = r.object("final_key");
        rep.final_key_alice = key_from_json(k.raw("alice"), "final_key.alice");
        rep.final_key_bob = key_from_json(k.raw("bob"), "final_key.bob");
        k.finish();

        const json &w = r.raw("warnings");
        if (!w.is_array()) {
            throw ConfigError("warnings: expected an array");
        }
        rep.warnings = w.get<std::vector<std::string>>();
        r.finish();
        return rep;
    } catch (const json::exception &e) {
        throw ConfigError(std::string("malformed report: ") + e.what());
    }
}

SessionReport parse_report(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError(std::string("report is not valid JSON: ") + e.what());
    }
    return report_from_json(j);
}

std::string dump_report(const SessionReport &report) {
    return report_to_json(report).dump(2) + "\n";
}

}  // namespace tcqkd::cli
