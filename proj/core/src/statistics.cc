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

#include "tcqkd/statistics.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <boost/math/distributions/binomial.hpp>
#include <boost/math/distributions/normal.hpp>

namespace tcqkd {

double two_sided_z(double confidence_level) {
    if (!(confidence_level > 0 && confidence_level < 1)) {
        std::stringstream ss;
        ss << "confidence level must be in (0, 1), got " << confidence_level;
        throw std::invalid_argument(ss.str());
    }
    boost::math::normal_distribution<double> standard;
    return boost::math::quantile(standard, 0.5 + confidence_level / 2);
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t trials, double confidence_level) {
    if (trials == 0) {
        throw std::invalid_argument("wilson_interval: trials must be positive");
    }
    if (successes > trials) {
        throw std::invalid_argument("wilson_interval: successes exceed trials");
    }
    double z = two_sided_z(confidence_level);
    double n = static_cast<double>(trials);
    double p = static_cast<double>(successes) / n;
    double z2 = z * z;
    double denom = 1 + z2 / n;
    double center = (p + z2 / (2 * n)) / denom;
    double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;

    Interval result{center - half, center + half};
    // The closed form gives exactly p at the edges only in exact arithmetic.
    if (successes == 0) {
        result.lo = 0;
    }
    if (successes == trials) {
        result.hi = 1;
    }
    result.lo = std::clamp(result.lo, 0.0, p);
    result.hi = std::clamp(result.hi, p, 1.0);
    return result;
}

double binomial_two_sided_p_value(std::uint64_t successes, std::uint64_t trials, double p) {
    if (successes > trials) {
        throw std::invalid_argument("binomial test: successes exceed trials");
    }
    if (!(p >= 0 && p <= 1)) {
        throw std::invalid_argument("binomial test: probability must be in [0, 1]");
    }
    if (trials == 0) {
        return 1.0;
    }
    if (p == 0) {
        return successes == 0 ? 1.0 : 0.0;
    }
    if (p == 1) {
        return successes == trials ? 1.0 : 0.0;
    }

    boost::math::binomial_distribution<double> dist(static_cast<double>(trials), p);
    auto pmf = [&](std::uint64_t x) {
        return boost::math::pdf(dist, static_cast<double>(x));
    };
    double threshold = pmf(successes) * (1 + 1e-7);

    // The pmf rises up to the mode and falls after it, so the outcomes at most
    // as likely as the observed one are a left tail [0, left] plus a right
    // tail [right, trials]. Both boundaries are found by bisection.
    auto mode = std::min<std::uint64_t>(
        trials, static_cast<std::uint64_t>(std::floor(static_cast<double>(trials + 1) * p)));
    if (pmf(mode) <= threshold) {
        return 1.0;
    }

    // Largest x in [0, mode) with pmf(x) <= threshold, or none.
    std::optional<std::uint64_t> left;
    {
        std::uint64_t lo = 0, hi = mode;  // search in [lo, hi)
        while (lo < hi) {
            std::uint64_t mid = lo + (hi - lo) / 2;
            if (pmf(mid) <= threshold) {
                left = mid;
                lo = mid + 1;
            } else {
                hi = mid;
            }
        }
    }
    // Smallest y in (mode, trials] with pmf(y) <= threshold, or none.
    std::optional<std::uint64_t> right;
    {
        std::uint64_t lo = mode + 1, hi = trials + 1;
        while (lo < hi) {
            std::uint64_t mid = lo + (hi - lo) / 2;
            if (pmf(mid) <= threshold) {
                right = mid;
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
    }

    double total = 0;
    if (left) {
        total += boost::math::cdf(dist, static_cast<double>(*left));
    }
    if (right) {
        total += boost::math::cdf(boost::math::complement(dist, static_cast<double>(*right - 1)));
    }
    return std::min(1.0, total);
}

}  // namespace tcqkd
