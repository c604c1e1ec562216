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

#ifndef TCQKD_RANDOM_H
#define TCQKD_RANDOM_H

#include <cstdint>
#include <limits>

namespace tcqkd {

/// Counter-addressed pseudo-random stream.
///
/// A stream is identified by (seed, stream_id). Two streams with different ids
/// are statistically independent, and the values produced by a stream depend
/// only on its identity, never on which thread drew it or in what order other
/// streams were consumed. The session engine gives every pulse its own stream,
/// which is what makes reports reproducible under parallel evaluation.
///
/// The generator is SplitMix64; the key derivation runs the seed and the id
/// through the same finalizer so nearby ids give unrelated starting states.
class RandomStream {
   public:
    using result_type = std::uint64_t;

    RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept;

    static constexpr result_type min() noexcept {
        return 0;
    }
    static constexpr result_type max() noexcept {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept;

    /// Uniform double in [0, 1) with 53 bits of resolution.
    double uniform01() noexcept;

    /// Uniform double in [lo, hi). Never returns hi.
    double uniform(double lo, double hi) noexcept;

    /// Uniform integer in [0, n). n must be positive.
    std::uint64_t uniform_index(std::uint64_t n) noexcept;

    /// True with probability p. p <= 0 never fires, p >= 1 always fires.
    bool bernoulli(double p) noexcept;

   private:
    std::uint64_t state_;
};

/// SplitMix64 output finalizer.
std::uint64_t mix64(std::uint64_t x) noexcept;

}  // namespace tcqkd

#endif  // TCQKD_RANDOM_H
