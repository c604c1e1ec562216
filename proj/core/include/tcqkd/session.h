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

#ifndef TCQKD_SESSION_H
#define TCQKD_SESSION_H

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tcqkd/channel.h"
#include "tcqkd/interferometer.h"
#include "tcqkd/protocol.h"
#include "tcqkd/statistics.h"

namespace tcqkd {

struct SessionConfig {
    std::uint64_t n_pulses = 100000;
    EncoderConfig encoder;
    ChannelConfig channel;
    EveStrategy eve = NoEve{};
    /// Fraction of pulses Eve attacks. 1 is the all-pulses scenario.
    double intercept_fraction = 1.0;
    InterferometerConfig mz;
    /// Probability that Bob routes a pulse to the interferometer instead of
    /// the key counter.
    double p_route_mz = 0.5;
    double reveal_fraction = 0.5;
    double confidence_level = 0.95;
    double mz_alpha = 0.01;
    std::uint64_t seed = 1;

    /// Throws std::invalid_argument naming the first offending field.
    void validate() const;
    bool operator==(const SessionConfig &other) const = default;
};

/// Tallies for one session.
///
///   emitted = suppressed_by_eve + lost + routed_to_key + routed_to_mz
///   decoded + ambiguous + no_candidate = key_detections
///   key_detections = routed_to_key + dark_counts
///   mz_port_a + mz_port_b = routed_to_mz
struct SessionCounts {
    std::uint64_t emitted = 0;
    std::uint64_t suppressed_by_eve = 0;
    std::uint64_t lost = 0;
    std::uint64_t routed_to_key = 0;
    std::uint64_t routed_to_mz = 0;
    std::uint64_t dark_counts = 0;
    std::uint64_t decoded = 0;
    std::uint64_t ambiguous = 0;
    std::uint64_t no_candidate = 0;
    std::uint64_t intercepted = 0;

    bool operator==(const SessionCounts &other) const = default;
};

enum class Decision { Honest, AttackSuspected };

struct Verdict {
    Decision decision = Decision::Honest;
    double p_value = 1.0;
    bool operator==(const Verdict &other) const = default;
};

struct MzStatistics {
    std::uint64_t port_a = 0;
    std::uint64_t port_b = 0;
    /// port_a / (port_a + port_b), 0 when nothing reached the interferometer.
    double port_a_fraction = 0;
    /// Wilson interval on the PortA probability at the session confidence
    /// level; [0, 1] when there are no counts.
    Interval port_a_interval{0, 1};
    /// PortA probability of an honest codeword.
    double expected_port_a_honest = 0;

    bool operator==(const MzStatistics &other) const = default;
};

/// Closed-form honest-session values.
struct HonestExpectations {
    /// Expected sifted bits per key-counter detection, lossless and noiseless.
    double sift_fraction = 0;
    double port_a_prob = 0;
    /// Unambiguous support per symbol, in units of T.
    std::vector<double> unambiguous_measure;
    /// Symbols whose pulse has no unambiguous interval, etc.
    std::vector<std::string> warnings;
};

struct SessionReport {
    SessionConfig config;
    SessionCounts counts;
    std::uint64_t sifted_length = 0;
    /// Absent when the sifted key is empty.
    std::optional<QberEstimate> qber;
    /// Error rate over the whole sifted key. Only a simulator can know it.
    double sifted_error_rate = 0;
    MzStatistics mz;
    double expected_sift_fraction = 0;
    Verdict verdict;
    /// Sifted keys with the disclosed QBER sample removed.
    std::vector<Symbol> final_key_alice;
    std::vector<Symbol> final_key_bob;
    std::vector<std::string> warnings;

    bool operator==(const SessionReport &other) const = default;
};

struct ExecutionOptions {
    /// Worker threads for pulse evaluation. 0 picks hardware concurrency.
    unsigned threads = 1;
};

/// Runs one session. The report depends only on cfg; the thread count changes
/// nothing but wall time.
SessionReport run_session(const SessionConfig &cfg, const ExecutionOptions &exec = {});

/// Exact two-sided binomial test of port_a_count ~ Binomial(total, p_honest).
/// total == 0 gives Honest with p-value 1.
Verdict mz_attack_test(std::uint64_t port_a_count, std::uint64_t total, double p_honest, double alpha);

/// Throws std::invalid_argument if cfg is invalid. Degenerate delay sets are
/// reported in the warnings, not rejected.
HonestExpectations honest_expectations(const SessionConfig &cfg);

/// Measure of the part of symbol k's support covered by no other symbol's
/// support, in the encoder's time units.
std::vector<double> unambiguous_measures(const EncoderConfig &encoder);

}  // namespace tcqkd

#endif  // TCQKD_SESSION_H
