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

#include "tcqkd/channel.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tcqkd {

void ChannelConfig::validate() const {
    if (!(transmittance >= 0 && transmittance <= 1)) {
        std::stringstream ss;
        ss << "channel.transmittance: must be in [0, 1], got " << transmittance;
        throw std::invalid_argument(ss.str());
    }
    if (!(dark_count_prob >= 0 && dark_count_prob < 1)) {
        std::stringstream ss;
        ss << "channel.dark_count_prob: must be in [0, 1), got " << dark_count_prob;
        throw std::invalid_argument(ss.str());
    }
}

std::vector<std::string> validate_eve(const EveStrategy &eve, const EncoderConfig &encoder) {
    std::vector<std::string> warnings;
    if (const auto *s = std::get_if<ResendShort>(&eve)) {
        if (!(s->pulse_duration > 0) || !std::isfinite(s->pulse_duration)) {
            std::stringstream ss;
            ss << "eve.pulse_duration: must be positive and finite, got " << s->pulse_duration;
            throw std::invalid_argument(ss.str());
        }
        if (s->pulse_duration >= encoder.pulse_duration / 2) {
            std::stringstream ss;
            ss << "eve.pulse_duration " << s->pulse_duration
               << " is not short compared to T/2; the interferometer signature is reduced";
            warnings.push_back(ss.str());
        }
    }
    return warnings;
}

std::optional<WavePacket> transmit(const WavePacket &w, const ChannelConfig &ch, RandomStream &rng) {
    if (rng.bernoulli(ch.transmittance)) {
        return w;
    }
    return std::nullopt;
}

std::optional<WavePacket> eve_resend(
    TimeInstant detection_time, const EveStrategy &strategy, const EncoderConfig &cfg, RandomStream &rng) {
    struct Visitor {
        TimeInstant t;
        const EncoderConfig &cfg;
        RandomStream &rng;

        std::optional<WavePacket> operator()(const NoEve &) const {
            throw std::logic_error("eve_resend called without an attack strategy");
        }
        std::optional<WavePacket> operator()(const ResendFull &full) const {
            Classification c = classify(t, cfg);
            if (const auto *d = std::get_if<Decoded>(&c)) {
                return encode(d->symbol, cfg);
            }
            if (const auto *a = std::get_if<Ambiguous>(&c)) {
                if (full.ambiguous_policy == AmbiguousPolicy::Suppress) {
                    return std::nullopt;
                }
                return encode(a->candidates[rng.uniform_index(a->candidates.size())], cfg);
            }
            return std::nullopt;
        }
        std::optional<WavePacket> operator()(const ResendShort &s) const {
            return rect_packet(t, s.pulse_duration);
        }
    };
    return std::visit(Visitor{detection_time, cfg, rng}, strategy);
}

std::optional<WavePacket> eve_intercept(
    const WavePacket &w, const EveStrategy &strategy, const EncoderConfig &cfg, RandomStream &rng) {
    if (std::holds_alternative<NoEve>(strategy)) {
        return w;
    }
    TimeInstant t = sample_detection_time(w, rng);
    return eve_resend(t, strategy, cfg, rng);
}

std::optional<TimeInstant> apply_dark_count(
    std::optional<TimeInstant> detected, const ChannelConfig &ch, TimeWindow window, RandomStream &rng) {
    if (!(window.end > window.start)) {
        throw std::invalid_argument("apply_dark_count: window is empty");
    }
    if (detected.has_value()) {
        return detected;
    }
    if (rng.bernoulli(ch.dark_count_prob)) {
        return rng.uniform(window.start, window.end);
    }
    return std::nullopt;
}

}  // namespace tcqkd
