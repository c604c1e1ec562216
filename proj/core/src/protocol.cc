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

#include "tcqkd/protocol.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tcqkd {

void EncoderConfig::validate() const {
    if (!(pulse_duration > 0) || !std::isfinite(pulse_duration)) {
        std::stringstream ss;
        ss << "encoder.pulse_duration: must be positive and finite, got " << pulse_duration;
        throw std::invalid_argument(ss.str());
    }
    if (delays.size() < 2) {
        throw std::invalid_argument("encoder.delays: need at least 2 delays");
    }
    for (size_t k = 0; k < delays.size(); k++) {
        if (!std::isfinite(delays[k])) {
            throw std::invalid_argument("encoder.delays: entries must be finite");
        }
        if (k > 0 && !(delays[k] > delays[k - 1])) {
            throw std::invalid_argument("encoder.delays: must be strictly increasing");
        }
    }
}

WavePacket encode(Symbol symbol, const EncoderConfig &cfg) {
    if (symbol >= cfg.delays.size()) {
        std::stringstream ss;
        ss << "encode: symbol " << symbol << " out of range for " << cfg.delays.size() << " delays";
        throw std::out_of_range(ss.str());
    }
    return rect_packet(cfg.delays[symbol], cfg.pulse_duration);
}

Classification classify(TimeInstant t, const EncoderConfig &cfg) {
    std::vector<Symbol> candidates;
    for (size_t k = 0; k < cfg.delays.size(); k++) {
        // Same expression rect_packet uses for the segment end.
        if (cfg.delays[k] <= t && t < cfg.delays[k] + cfg.pulse_duration) {
            candidates.push_back(static_cast<Symbol>(k));
        }
    }
    if (candidates.empty()) {
        return NoCandidate{};
    }
    if (candidates.size() == 1) {
        return Decoded{candidates[0]};
    }
    return Ambiguous{std::move(candidates)};
}

SiftResult sift(std::span<const Symbol> alice_symbols, std::span<const Classification> bob_results) {
    if (alice_symbols.size() != bob_results.size()) {
        std::stringstream ss;
        ss << "sift: " << alice_symbols.size() << " Alice symbols but " << bob_results.size() << " Bob results";
        throw std::invalid_argument(ss.str());
    }
    SiftResult out;
    for (size_t k = 0; k < bob_results.size(); k++) {
        if (const auto *d = std::get_if<Decoded>(&bob_results[k])) {
            out.key_alice.push_back(alice_symbols[k]);
            out.key_bob.push_back(d->symbol);
            out.kept_indices.push_back(k);
        }
    }
    return out;
}

QberEstimate estimate_qber(
    std::span<const Symbol> key_alice,
    std::span<const Symbol> key_bob,
    double reveal_fraction,
    double confidence_level,
    RandomStream &rng) {
    if (key_alice.size() != key_bob.size()) {
        throw std::invalid_argument("estimate_qber: keys differ in length");
    }
    if (key_alice.empty()) {
        throw std::invalid_argument("estimate_qber: keys are empty");
    }
    if (!(reveal_fraction > 0 && reveal_fraction <= 1)) {
        throw std::invalid_argument("estimate_qber: reveal_fraction must be in (0, 1]");
    }
    const std::uint64_t n = key_alice.size();
    // The 1e-9 keeps e.g. 0.3 * 10 from rounding up to 4.
    auto count = static_cast<std::uint64_t>(std::ceil(reveal_fraction * static_cast<double>(n) - 1e-9));
    count = std::clamp<std::uint64_t>(count, 1, n);

    std::vector<std::uint64_t> positions(n);
    std::iota(positions.begin(), positions.end(), 0);
    if (count < n) {
        // Partial Fisher-Yates.
        for (std::uint64_t k = 0; k < count; k++) {
            std::uint64_t j = k + rng.uniform_index(n - k);
            std::swap(positions[k], positions[j]);
        }
        positions.resize(count);
        std::sort(positions.begin(), positions.end());
    }

    QberEstimate est;
    est.revealed = count;
    for (auto p : positions) {
        est.errors += key_alice[p] != key_bob[p];
    }
    est.qber = static_cast<double>(est.errors) / static_cast<double>(count);
    est.confidence_level = confidence_level;
    est.confidence_interval = wilson_interval(est.errors, count, confidence_level);
    est.revealed_positions = std::move(positions);
    return est;
}

}  // namespace tcqkd
