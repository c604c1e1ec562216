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

#ifndef TCQKD_CHANNEL_H
#define TCQKD_CHANNEL_H

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "tcqkd/protocol.h"
#include "tcqkd/random.h"
#include "tcqkd/wavepacket.h"

namespace tcqkd {

struct ChannelConfig {
    /// Probability that a photon reaches Bob.
    double transmittance = 1.0;
    /// Probability of a spurious click in a detection window with no photon.
    double dark_count_prob = 0.0;

    void validate() const;
    bool operator==(const ChannelConfig &other) const = default;
};

/// What Eve does with an ambiguous detection when resending full pulses.
enum class AmbiguousPolicy { GuessUniform, Suppress };

struct NoEve {
    bool operator==(const NoEve &other) const = default;
};

/// Measure the arrival time, decode it like Bob would, resend the codeword.
struct ResendFull {
    AmbiguousPolicy ambiguous_policy = AmbiguousPolicy::GuessUniform;
    bool operator==(const ResendFull &other) const = default;
};

/// Measure the arrival time t and resend a rectangular pulse on
/// [t, t + pulse_duration).
struct ResendShort {
    double pulse_duration = 0.01;
    bool operator==(const ResendShort &other) const = default;
};

using EveStrategy = std::variant<NoEve, ResendFull, ResendShort>;

/// Throws on invalid parameters. Returns human-readable warnings for legal but
/// weak configurations (a resend pulse of at least T/2 is no longer fully
/// decorrelated by the T/2 interferometer).
std::vector<std::string> validate_eve(const EveStrategy &eve, const EncoderConfig &encoder);

/// Loss: returns the packet with probability transmittance.
std::optional<WavePacket> transmit(const WavePacket &w, const ChannelConfig &ch, RandomStream &rng);

/// Eve's resend decision given that she detected the photon at time t.
/// Exposed separately so the deterministic part of each attack can be tested
/// at chosen detection times.
std::optional<WavePacket> eve_resend(
    TimeInstant detection_time, const EveStrategy &strategy, const EncoderConfig &cfg, RandomStream &rng);

/// Eve intercepts w: she measures a detection time from w, then resends via
/// eve_resend. NoEve returns w unchanged and consumes no randomness.
std::optional<WavePacket> eve_intercept(
    const WavePacket &w, const EveStrategy &strategy, const EncoderConfig &cfg, RandomStream &rng);

struct TimeWindow {
    TimeInstant start;
    TimeInstant end;
};

/// If there is no photon detection, a dark count fires with probability
/// dark_count_prob at a uniform time in the window. Detections pass through.
std::optional<TimeInstant> apply_dark_count(
    std::optional<TimeInstant> detected, const ChannelConfig &ch, TimeWindow window, RandomStream &rng);

}  // namespace tcqkd

#endif  // TCQKD_CHANNEL_H
