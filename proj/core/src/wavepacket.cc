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

#include "tcqkd/wavepacket.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tcqkd {

namespace {

double raw_norm(std::span<const Segment> segments) {
    double total = 0;
    for (const auto &s : segments) {
        total += std::norm(s.amplitude) * s.length();
    }
    return total;
}

void check_layout(std::span<const Segment> segments) {
    if (segments.empty()) {
        throw std::invalid_argument("wave packet needs at least one segment");
    }
    for (size_t k = 0; k < segments.size(); k++) {
        const auto &s = segments[k];
        if (!std::isfinite(s.start) || !std::isfinite(s.end) || !std::isfinite(s.amplitude.real()) ||
            !std::isfinite(s.amplitude.imag())) {
            throw std::invalid_argument("wave packet segment has a non-finite field");
        }
        if (!(s.end > s.start)) {
            std::stringstream ss;
            ss << "wave packet segment " << k << " is empty: [" << s.start << ", " << s.end << ")";
            throw std::invalid_argument(ss.str());
        }
        if (k > 0 && s.start < segments[k - 1].end) {
            std::stringstream ss;
            ss << "wave packet segments " << (k - 1) << " and " << k << " overlap or are unsorted";
            throw std::invalid_argument(ss.str());
        }
    }
}

}  // namespace

WavePacket WavePacket::from_segments(std::vector<Segment> segments) {
    check_layout(segments);
    double n = raw_norm(segments);
    if (std::abs(n - 1.0) > kNormTolerance) {
        std::stringstream ss;
        ss.precision(17);
        ss << "wave packet norm is " << n << ", expected 1";
        throw std::invalid_argument(ss.str());
    }
    return WavePacket(std::move(segments));
}

WavePacket WavePacket::normalized(std::vector<Segment> segments) {
    check_layout(segments);
    double n = raw_norm(segments);
    if (!(n > 0)) {
        throw std::invalid_argument("wave packet has zero norm");
    }
    double scale = 1.0 / std::sqrt(n);
    for (auto &s : segments) {
        s.amplitude *= scale;
    }
    return from_segments(std::move(segments));
}

double WavePacket::norm() const {
    return raw_norm(segments_);
}

std::complex<double> WavePacket::amplitude_at(TimeInstant t) const {
    auto it = std::upper_bound(segments_.begin(), segments_.end(), t, [](double v, const Segment &s) {
        return v < s.end;
    });
    if (it != segments_.end() && it->start <= t) {
        return it->amplitude;
    }
    return {};
}

bool WavePacket::in_support(TimeInstant t) const {
    for (const auto &s : segments_) {
        if (s.start <= t && t < s.end) {
            return true;
        }
    }
    return false;
}

WavePacket rect_packet(TimeInstant start, double duration) {
    if (!std::isfinite(start)) {
        throw std::invalid_argument("rect_packet: start must be finite");
    }
    if (!(duration > 0) || !std::isfinite(duration)) {
        std::stringstream ss;
        ss << "rect_packet: duration must be positive and finite, got " << duration;
        throw std::invalid_argument(ss.str());
    }
    // 1/sqrt(d) squared times d can miss 1 by an ulp or two; normalized()
    // absorbs that.
    return WavePacket::normalized({Segment{start, start + duration, 1.0 / std::sqrt(duration)}});
}

std::complex<double> autocorrelation(const WavePacket &w, double lag) {
    std::complex<double> total = 0;
    for (const auto &a : w.segments()) {
        for (const auto &b : w.segments()) {
            // psi(t - lag) is segment b moved later by lag.
            double lo = std::max(a.start, b.start + lag);
            double hi = std::min(a.end, b.end + lag);
            if (hi > lo) {
                total += std::conj(a.amplitude) * b.amplitude * (hi - lo);
            }
        }
    }
    return total;
}

TimeInstant sample_detection_time(const WavePacket &w, RandomStream &rng) {
    auto segments = w.segments();
    if (segments.size() == 1) {
        return rng.uniform(segments[0].start, segments[0].end);
    }
    double u = rng.uniform01() * w.norm();
    double acc = 0;
    for (const auto &s : segments) {
        acc += std::norm(s.amplitude) * s.length();
        if (u < acc) {
            return rng.uniform(s.start, s.end);
        }
    }
    const auto &last = segments.back();
    return rng.uniform(last.start, last.end);
}

}  // namespace tcqkd
