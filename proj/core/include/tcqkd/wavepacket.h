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

#ifndef TCQKD_WAVEPACKET_H
#define TCQKD_WAVEPACKET_H

#include <complex>
#include <span>
#include <vector>

#include "tcqkd/random.h"

namespace tcqkd {

/// Time in units of the nominal pulse duration T, measured from Alice's
/// time reference.
using TimeInstant = double;

/// One piece of a piecewise-constant amplitude, supported on [start, end).
struct Segment {
    TimeInstant start;
    TimeInstant end;
    std::complex<double> amplitude;

    double length() const {
        return end - start;
    }
    bool operator==(const Segment &other) const = default;
};

/// Temporal amplitude of a one-photon pulse.
///
/// Segments are sorted, non-overlapping, have positive length, and the total
/// norm is 1 to within kNormTolerance. A single constant-amplitude segment is
/// a fully coherent pulse: its coherence length equals its duration.
class WavePacket {
   public:
    static constexpr double kNormTolerance = 1e-12;

    /// Validates the segments as given. Throws std::invalid_argument on
    /// unsorted, overlapping or empty segments, or if the norm is not 1.
    static WavePacket from_segments(std::vector<Segment> segments);

    /// Like from_segments but rescales the amplitudes to unit norm first.
    static WavePacket normalized(std::vector<Segment> segments);

    std::span<const Segment> segments() const {
        return segments_;
    }
    TimeInstant support_start() const {
        return segments_.front().start;
    }
    TimeInstant support_end() const {
        return segments_.back().end;
    }
    double norm() const;

    /// psi(t); zero outside the support.
    std::complex<double> amplitude_at(TimeInstant t) const;
    bool in_support(TimeInstant t) const;

    bool operator==(const WavePacket &other) const = default;

   private:
    explicit WavePacket(std::vector<Segment> segments) : segments_(std::move(segments)) {
    }

    std::vector<Segment> segments_;
};

/// Rectangular coherent pulse on [start, start + duration) with amplitude
/// 1/sqrt(duration). Throws std::invalid_argument unless duration > 0 and
/// both arguments are finite.
WavePacket rect_packet(TimeInstant start, double duration);

/// C(lag) = integral of conj(psi(t)) * psi(t - lag) dt, evaluated exactly as a
/// sum over pairwise segment overlaps.
std::complex<double> autocorrelation(const WavePacket &w, double lag);

/// Draws a detection time from the Born density |psi(t)|^2.
TimeInstant sample_detection_time(const WavePacket &w, RandomStream &rng);

}  // namespace tcqkd

#endif  // TCQKD_WAVEPACKET_H
