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

#include "tcqkd/interferometer.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace tcqkd {

void InterferometerConfig::validate() const {
    if (!(arm_delay >= 0) || !std::isfinite(arm_delay)) {
        std::stringstream ss;
        ss << "mz.arm_delay: must be non-negative and finite, got " << arm_delay;
        throw std::invalid_argument(ss.str());
    }
    if (!std::isfinite(arm_phase)) {
        throw std::invalid_argument("mz.arm_phase: must be finite");
    }
}

PortProbabilities port_probabilities(const WavePacket &w, const InterferometerConfig &cfg) {
    std::complex<double> c = autocorrelation(w, cfg.arm_delay);
    double interference = (std::polar(1.0, cfg.arm_phase) * c).real();
    double pa = std::clamp((1 + interference) / 2, 0.0, 1.0);
    return {pa, 1 - pa};
}

PortLabel sample_port(const WavePacket &w, const InterferometerConfig &cfg, RandomStream &rng) {
    return rng.bernoulli(port_probabilities(w, cfg).port_a) ? PortLabel::PortA : PortLabel::PortB;
}

}  // namespace tcqkd
