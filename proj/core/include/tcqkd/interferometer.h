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

#ifndef TCQKD_INTERFEROMETER_H
#define TCQKD_INTERFEROMETER_H

#include <numbers>

#include "tcqkd/random.h"
#include "tcqkd/wavepacket.h"

namespace tcqkd {

/// Unbalanced Mach-Zehnder: one arm is longer by arm_delay and carries an
/// extra phase arm_phase. The defaults are the T/2, pi duration tester.
struct InterferometerConfig {
    double arm_delay = 0.5;
    double arm_phase = std::numbers::pi;

    void validate() const;
    bool operator==(const InterferometerConfig &other) const = default;
};

/// Port convention: PortA receives (psi(t) + e^{i phase} psi(t - delay)) / 2,
/// PortB the difference. With zero delay and zero phase every photon exits
/// PortA; with the default config an honest duration-T pulse exits PortA with
/// probability 1/4.
enum class PortLabel { PortA, PortB };

struct PortProbabilities {
    double port_a;
    double port_b;
};

/// pA = (1 + Re[e^{i phase} C(delay)]) / 2, pB = 1 - pA.
PortProbabilities port_probabilities(const WavePacket &w, const InterferometerConfig &cfg);

PortLabel sample_port(const WavePacket &w, const InterferometerConfig &cfg, RandomStream &rng);

}  // namespace tcqkd

#endif  // TCQKD_INTERFEROMETER_H
