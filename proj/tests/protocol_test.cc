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

#include <stdexcept>

#include "gtest/gtest.h"
#include "oracles.h"

using namespace tcqkd;

namespace {

Classification expected_from_region(oracle::Region r) {
    switch (r) {
        case oracle::Region::Bit0:
            return Decoded{0};
        case oracle::Region::Bit1:
            return Decoded{1};
        case oracle::Region::Ambiguous:
            return Ambiguous{{0, 1}};
        default:
            return NoCandidate{};
    }
}

}  // namespace

TEST(encoder_config, validation) {
    EncoderConfig cfg;
    ASSERT_NO_THROW(cfg.validate());
    ASSERT_EQ(cfg.delays, (std::vector<double>{0.0, 0.5}));
    ASSERT_EQ(cfg.pulse_duration, 1.0);

    ASSERT_THROW((EncoderConfig{1.0, {0.0}}.validate()), std::invalid_argument);
    ASSERT_THROW((EncoderConfig{1.0, {0.0, 0.0}}.validate()), std::invalid_argument);
    ASSERT_THROW((EncoderConfig{1.0, {0.5, 0.0}}.validate()), std::invalid_argument);
    ASSERT_THROW((EncoderConfig{0.0, {0.0, 0.5}}.validate()), std::invalid_argument);
    // Nested supports are legal; the session engine only warns.
    ASSERT_NO_THROW((EncoderConfig{1.0, {0.0, 0.25, 0.5}}.validate()));
}

TEST(encode, examples) {
    EncoderConfig cfg;
    ASSERT_EQ(encode(0, cfg), rect_packet(0, 1));
    ASSERT_EQ(encode(1, cfg), rect_packet(0.5, 1));
    EncoderConfig three{1.0, {0.0, 0.5, 1.0}};
    ASSERT_EQ(encode(2, three), rect_packet(1.0, 1));
    ASSERT_THROW(encode(2, cfg), std::out_of_range);
}

TEST(classify, examples) {
    EncoderConfig cfg;
    ASSERT_EQ(classify(0.25, cfg), Classification(Decoded{0}));
    ASSERT_EQ(classify(0.75, cfg), Classification(Ambiguous{{0, 1}}));
    ASSERT_EQ(classify(1.2, cfg), Classification(Decoded{1}));
    ASSERT_EQ(classify(1.8, cfg), Classification(NoCandidate{}));
    ASSERT_EQ(classify(-0.1, cfg), Classification(NoCandidate{}));
}

TEST(classify, half_open_boundaries) {
    EncoderConfig cfg;
    ASSERT_EQ(classify(0.0, cfg), Classification(Decoded{0}));
    ASSERT_EQ(classify(0.5, cfg), Classification(Ambiguous{{0, 1}}));
    ASSERT_EQ(classify(1.0, cfg), Classification(Decoded{1}));
    ASSERT_EQ(classify(1.5, cfg), Classification(NoCandidate{}));
}

TEST(classify, matches_interval_oracle_on_grid) {
    EncoderConfig cfg;
    const int n = 200000;
    for (int i = 0; i < n; i++) {
        double t = -0.5 + 2.5 * i / n;
        ASSERT_EQ(classify(t, cfg), expected_from_region(oracle::default_region(t))) << t;
    }
}

TEST(classify, three_way_overlap) {
    EncoderConfig cfg{1.0, {0.0, 0.25, 0.5}};
    ASSERT_EQ(classify(0.1, cfg), Classification(Decoded{0}));
    ASSERT_EQ(classify(0.3, cfg), Classification(Ambiguous{{0, 1}}));
    ASSERT_EQ(classify(0.6, cfg), Classification(Ambiguous{{0, 1, 2}}));
    ASSERT_EQ(classify(1.1, cfg), Classification(Ambiguous{{1, 2}}));
    ASSERT_EQ(classify(1.3, cfg), Classification(Decoded{2}));
}

TEST(classify, honest_detection_never_misdecodes) {
    RandomStream rng(21, 0);
    std::vector<EncoderConfig> configs{
        EncoderConfig{},
        EncoderConfig{1.0, {0.0, 0.5, 1.0}},
        EncoderConfig{1.0, {0.0, 0.25, 0.5}},
        EncoderConfig{0.7, {-0.3, 0.1, 0.15, 2.0}},
    };
    for (const auto &cfg : configs) {
        for (int k = 0; k < 20000; k++) {
            auto symbol = static_cast<Symbol>(rng.uniform_index(cfg.num_symbols()));
            auto c = classify(sample_detection_time(encode(symbol, cfg), rng), cfg);
            if (auto *d = std::get_if<Decoded>(&c)) {
                ASSERT_EQ(d->symbol, symbol);
            } else {
                auto *a = std::get_if<Ambiguous>(&c);
                ASSERT_NE(a, nullptr);
                ASSERT_NE(std::find(a->candidates.begin(), a->candidates.end(), symbol), a->candidates.end());
            }
        }
    }
}

TEST(sift, example) {
    std::vector<Symbol> alice{0, 1, 0};
    std::vector<Classification> bob{Decoded{0}, Ambiguous{{0, 1}}, Decoded{1}};
    auto s = sift(alice, bob);
    ASSERT_EQ(s.key_alice, (std::vector<Symbol>{0, 0}));
    ASSERT_EQ(s.key_bob, (std::vector<Symbol>{0, 1}));
    ASSERT_EQ(s.kept_indices, (std::vector<std::uint64_t>{0, 2}));
}

TEST(sift, all_ambiguous_and_mismatch) {
    std::vector<Symbol> alice{0, 1};
    std::vector<Classification> bob{Ambiguous{{0, 1}}, Ambiguous{{0, 1}}};
    auto s = sift(alice, bob);
    ASSERT_TRUE(s.key_alice.empty());
    ASSERT_TRUE(s.key_bob.empty());
    ASSERT_THROW(sift(alice, std::vector<Classification>{NoCandidate{}}), std::invalid_argument);
}

TEST(sift, random_inputs_keep_invariants) {
    RandomStream rng(22, 0);
    for (int trial = 0; trial < 200; trial++) {
        size_t n = rng.uniform_index(50);
        std::vector<Symbol> alice(n);
        std::vector<Classification> bob(n);
        for (size_t k = 0; k < n; k++) {
            alice[k] = rng.uniform_index(2);
            switch (rng.uniform_index(3)) {
                case 0:
                    bob[k] = Decoded{static_cast<Symbol>(rng.uniform_index(2))};
                    break;
                case 1:
                    bob[k] = Ambiguous{{0, 1}};
                    break;
                default:
                    bob[k] = NoCandidate{};
            }
        }
        auto s = sift(alice, bob);
        ASSERT_EQ(s.key_alice.size(), s.key_bob.size());
        ASSERT_EQ(s.key_alice.size(), s.kept_indices.size());
        for (size_t k = 1; k < s.kept_indices.size(); k++) {
            ASSERT_LT(s.kept_indices[k - 1], s.kept_indices[k]);
        }
    }
}

TEST(sift, honest_kept_fraction) {
    EncoderConfig cfg;
    RandomStream rng(23, 0);
    const int n = 100000;
    std::vector<Symbol> alice(n);
    std::vector<Classification> bob(n);
    for (int k = 0; k < n; k++) {
        alice[k] = rng.uniform_index(2);
        bob[k] = classify(sample_detection_time(encode(alice[k], cfg), rng), cfg);
    }
    auto s = sift(alice, bob);
    ASSERT_NEAR(s.kept_indices.size() / double(n), 0.5, 0.01);
    ASSERT_EQ(s.key_alice, s.key_bob);
}

TEST(estimate_qber, exact_cases) {
    RandomStream rng(24, 0);
    std::vector<Symbol> a{0, 1, 1, 0, 1, 0, 0, 1};
    auto same = estimate_qber(a, a, 0.3, 0.95, rng);
    ASSERT_EQ(same.qber, 0);
    ASSERT_EQ(same.errors, 0);
    ASSERT_EQ(same.revealed, 3);
    ASSERT_EQ(same.revealed_positions.size(), 3);

    std::vector<Symbol> flipped;
    for (auto s : a) {
        flipped.push_back(1 - s);
    }
    auto all = estimate_qber(a, flipped, 1.0, 0.95, rng);
    ASSERT_EQ(all.qber, 1.0);
    ASSERT_EQ(all.revealed, a.size());

    std::vector<Symbol> half = a;
    for (size_t k = 0; k < half.size(); k += 2) {
        half[k] = 1 - half[k];
    }
    auto h = estimate_qber(a, half, 1.0, 0.95, rng);
    ASSERT_EQ(h.qber, 0.5);
    ASSERT_LE(h.confidence_interval.lo, 0.5);
    ASSERT_GE(h.confidence_interval.hi, 0.5);
}

TEST(estimate_qber, reveal_sample_is_sorted_and_unique) {
    RandomStream rng(25, 0);
    std::vector<Symbol> a(1000, 0);
    auto e = estimate_qber(a, a, 0.1, 0.95, rng);
    ASSERT_EQ(e.revealed, 100);
    for (size_t k = 1; k < e.revealed_positions.size(); k++) {
        ASSERT_LT(e.revealed_positions[k - 1], e.revealed_positions[k]);
    }
    ASSERT_LT(e.revealed_positions.back(), 1000);
}

TEST(estimate_qber, errors) {
    RandomStream rng(26, 0);
    std::vector<Symbol> empty;
    std::vector<Symbol> one{0};
    std::vector<Symbol> two{0, 1};
    ASSERT_THROW(estimate_qber(empty, empty, 0.5, 0.95, rng), std::invalid_argument);
    ASSERT_THROW(estimate_qber(one, two, 0.5, 0.95, rng), std::invalid_argument);
    ASSERT_THROW(estimate_qber(one, one, 0.0, 0.95, rng), std::invalid_argument);
    ASSERT_THROW(estimate_qber(one, one, 1.5, 0.95, rng), std::invalid_argument);
}
