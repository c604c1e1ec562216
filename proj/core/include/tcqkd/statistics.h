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

#ifndef TCQKD_STATISTICS_H
#define TCQKD_STATISTICS_H

#include <cstdint>

namespace tcqkd {

struct Interval {
    double lo;
    double hi;
    bool operator==(const Interval &other) const = default;
};

/// Two-sided standard normal quantile for a confidence level in (0, 1),
/// e.g. 0.95 -> 1.959964.
double two_sided_z(double confidence_level);

/// Wilson score interval for a binomial proportion. Throws
/// std::invalid_argument if trials == 0, successes > trials, or the level is
/// outside (0, 1).
Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence_level);

/// Exact two-sided binomial test p-value: the total probability of every
/// outcome no more likely than the observed one under Binomial(trials, p).
/// Uses the same relative slack (1 + 1e-7) as R's binom.test when comparing
/// point masses. Returns 1 when trials == 0.
double binomial_two_sided_p_value(std::uint64_t successes, std::uint64_t trials, double p);

}  // namespace tcqkd

#endif  // TCQKD_STATISTICS_H
