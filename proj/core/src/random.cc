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

#include "tcqkd/random.h"

#include <cmath>

namespace tcqkd {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
}

std::uint64_t mix64(std::uint64_t x) noexcept {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ULL;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBULL;
    x ^= x >> 31;
    return x;
}

RandomStream::RandomStream(std::uint64_t seed, std::uint64_t stream_id) noexcept
    : state_(mix64(mix64(seed + kGolden) ^ (stream_id * kGolden + 0x632BE59BD9B4E019ULL))) {
}

RandomStream::result_type RandomStream::operator()() noexcept {
    state_ += kGolden;
    return mix64(state_);
}

double RandomStream::uniform01() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

double RandomStream::uniform(double lo, double hi) noexcept {
    double x = lo + uniform01() * (hi - lo);
    // Rounding in the affine map can land exactly on hi.
    if (x >= hi) {
        x = std::nextafter(hi, lo);
    }
    return x;
}

std::uint64_t RandomStream::uniform_index(std::uint64_t n) noexcept {
    // Lemire's multiply-shift; the bias is below 2^-64 * n and irrelevant here.
    __extension__ using u128 = unsigned __int128;
    u128 product = static_cast<u128>((*this)()) * n;
    return static_cast<std::uint64_t>(product >> 64);
}

bool RandomStream::bernoulli(double p) noexcept {
    if (p <= 0.0) {
        return false;
    }
    if (p >= 1.0) {
        return true;
    }
    return uniform01() < p;
}

}  // namespace tcqkd
