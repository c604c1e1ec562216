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

#ifndef TCQKD_PROTOCOL_H
#define TCQKD_PROTOCOL_H

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "tcqkd/random.h"
#include "tcqkd/statistics.h"
#include "tcqkd/wavepacket.h"

namespace tcqkd {

/// Index into the encoder's delay list. In the two-state protocol symbol 0 is
/// bit 0 (zero delay) and symbol 1 is bit 1 (delay T/2).
using Symbol = std::uint32_t;

/// Alice's alphabet: one delay per symbol, all pulses of the same duration.
struct EncoderConfig {
    double pulse_duration = 1.0;
    std::vector<double> delays{0.0, 0.5};

    /// Throws std::invalid_argument naming the offending field.
    void validate() const;
    size_t num_symbols() const {
        return delays.size();
    }
    bool operator==(const EncoderConfig &other) const = default;
};

struct Decoded {
    Symbol symbol;
    bool operator==(const Decoded &other) const = default;
};
struct Ambiguous {
    /// Strictly increasing, at least two entries.
    std::vector<Symbol> candidates;
    bool operator==(const Ambiguous &other) const = default;
};
struct NoCandidate {
    bool operator==(const NoCandidate &other) const = default;
};

/// Outcome of Bob's delay measurement.
using Classification = std::variant<Decoded, Ambiguous, NoCandidate>;

WavePacket encode(Symbol symbol, const EncoderConfig &cfg);

/// Candidate set is {k : delays[k] <= t < delays[k] + pulse_duration}.
Classification classify(TimeInstant t, const EncoderConfig &cfg);

struct SiftResult {
    std::vector<Symbol> key_alice;
    std::vector<Symbol> key_bob;
    std::vector<std::uint64_t> kept_indices;
};

/// Keeps the positions where Bob obtained an unambiguous delay.
SiftResult sift(std::span<const Symbol> alice_symbols, std::span<const Classification> bob_results);

struct QberEstimate {
    std::uint64_t revealed = 0;
    std::uint64_t errors = 0;
    double qber = 0;
    double confidence_level = 0.95;
    Interval confidence_interval{0, 1};
    /// Sorted positions (into the sifted key) that were disclosed.
    std::vector<std::uint64_t> revealed_positions;

    bool operator==(const QberEstimate &other) const = default;
};

/// Discloses ceil(reveal_fraction * n) uniformly chosen sifted positions,
/// counts mismatches, and attaches a Wilson interval.
QberEstimate estimate_qber(
    std::span<const Symbol> key_alice,
    std::span<const Symbol> key_bob,
    double reveal_fraction,
    double confidence_level,
    RandomStream &rng);

}  // namespace tcqkd

#endif  // TCQKD_PROTOCOL_H
