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

#include "tcqkd/session.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace tcqkd {

namespace {

// Pulse i draws from stream i; post-processing uses a stream no pulse can
// reach.
constexpr std::uint64_t kQberStreamId = std::numeric_limits<std::uint64_t>::max();

void require_unit(double v, const char *field, bool open_lo, bool open_hi) {
    bool ok = (open_lo ? v > 0 : v >= 0) && (open_hi ? v < 1 : v <= 1);
    if (!ok) {
        std::stringstream ss;
        ss << field << ": must be in " << (open_lo ? '(' : '[') << "0, 1" << (open_hi ? ')' : ']') << ", got " << v;
        throw std::invalid_argument(ss.str());
    }
}

struct ChunkResult {
    SessionCounts counts;
    std::uint64_t port_a = 0;
    std::uint64_t port_b = 0;
    std::vector<Symbol> alice;
    std::vector<Classification> bob;
};

void simulate_range(const SessionConfig &cfg, std::uint64_t begin, std::uint64_t end, ChunkResult &out) {
    const bool eve_active = !std::holds_alternative<NoEve>(cfg.eve);
    const TimeWindow window{cfg.encoder.delays.front(), cfg.encoder.delays.back() + cfg.encoder.pulse_duration};
    auto &counts = out.counts;

    for (std::uint64_t i = begin; i < end; i++) {
        RandomStream rng(cfg.seed, i);
        counts.emitted++;

        auto symbol = static_cast<Symbol>(rng.uniform_index(cfg.encoder.num_symbols()));
        std::optional<WavePacket> photon = encode(symbol, cfg.encoder);

        // Always drawn, so the same pulses are attacked as the fraction grows.
        bool attacked = eve_active && rng.bernoulli(cfg.intercept_fraction);
        if (attacked) {
            counts.intercepted++;
            photon = eve_intercept(*photon, cfg.eve, cfg.encoder, rng);
            if (!photon) {
                counts.suppressed_by_eve++;
            }
        }
        if (photon) {
            photon = transmit(*photon, cfg.channel, rng);
            if (!photon) {
                counts.lost++;
            }
        }

        bool to_mz = rng.bernoulli(cfg.p_route_mz);
        if (to_mz) {
            if (photon) {
                counts.routed_to_mz++;
                if (sample_port(*photon, cfg.mz, rng) == PortLabel::PortA) {
                    out.port_a++;
                } else {
                    out.port_b++;
                }
            }
            continue;
        }

        std::optional<TimeInstant> detection;
        if (photon) {
            counts.routed_to_key++;
            detection = sample_detection_time(*photon, rng);
        }
        detection = apply_dark_count(detection, cfg.channel, window, rng);
        if (!detection) {
            continue;
        }
        if (!photon) {
            counts.dark_counts++;
        }
        Classification c = classify(*detection, cfg.encoder);
        if (std::holds_alternative<Decoded>(c)) {
            counts.decoded++;
        } else if (std::holds_alternative<Ambiguous>(c)) {
            counts.ambiguous++;
        } else {
            counts.no_candidate++;
        }
        out.alice.push_back(symbol);
        out.bob.push_back(std::move(c));
    }
}

void accumulate(SessionCounts &into, const SessionCounts &from) {
    into.emitted += from.emitted;
    into.suppressed_by_eve += from.suppressed_by_eve;
    into.lost += from.lost;
    into.routed_to_key += from.routed_to_key;
    into.routed_to_mz += from.routed_to_mz;
    into.dark_counts += from.dark_counts;
    into.decoded += from.decoded;
    into.ambiguous += from.ambiguous;
    into.no_candidate += from.no_candidate;
    into.intercepted += from.intercepted;
}

}  // namespace

void SessionConfig::validate() const {
    if (n_pulses < 1) {
        throw std::invalid_argument("n_pulses: must be at least 1");
    }
    encoder.validate();
    channel.validate();
    validate_eve(eve, encoder);
    require_unit(intercept_fraction, "intercept_fraction", false, false);
    mz.validate();
    require_unit(p_route_mz, "p_route_mz", false, false);
    require_unit(reveal_fraction, "reveal_fraction", true, false);
    require_unit(confidence_level, "confidence_level", true, true);
    require_unit(mz_alpha, "mz_alpha", true, true);
}

std::vector<double> unambiguous_measures(const EncoderConfig &encoder) {
    const auto &d = encoder.delays;
    const double T = encoder.pulse_duration;
    std::vector<double> out(d.size());
    for (size_t k = 0; k < d.size(); k++) {
        // Equal durations and sorted delays: only the nearest neighbours can
        // bound the exclusive part of pulse k.
        double lo = k > 0 ? std::max(d[k], d[k - 1] + T) : d[k];
        double hi = k + 1 < d.size() ? std::min(d[k] + T, d[k + 1]) : d[k] + T;
        out[k] = std::max(0.0, hi - lo);
    }
    return out;
}

HonestExpectations honest_expectations(const SessionConfig &cfg) {
    cfg.validate();
    HonestExpectations out;
    out.unambiguous_measure = unambiguous_measures(cfg.encoder);
    double total = 0;
    for (size_t k = 0; k < out.unambiguous_measure.size(); k++) {
        total += out.unambiguous_measure[k];
        if (out.unambiguous_measure[k] <= 0) {
            std::stringstream ss;
            ss << "symbol " << k << " (delay " << cfg.encoder.delays[k]
               << ") has no unambiguous detection interval and can never be sifted";
            out.warnings.push_back(ss.str());
        }
    }
    out.sift_fraction =
        total / (static_cast<double>(out.unambiguous_measure.size()) * cfg.encoder.pulse_duration);
    out.port_a_prob = port_probabilities(encode(0, cfg.encoder), cfg.mz).port_a;
    return out;
}

Verdict mz_attack_test(std::uint64_t port_a_count, std::uint64_t total, double p_honest, double alpha) {
    if (port_a_count > total) {
        throw std::invalid_argument("mz_attack_test: port_a_count exceeds total");
    }
    Verdict v;
    v.p_value = binomial_two_sided_p_value(port_a_count, total, p_honest);
    v.decision = v.p_value < alpha ? Decision::AttackSuspected : Decision::Honest;
    return v;
}

SessionReport run_session(const SessionConfig &cfg, const ExecutionOptions &exec) {
    cfg.validate();
    HonestExpectations expected = honest_expectations(cfg);

    SessionReport report;
    report.config = cfg;
    report.expected_sift_fraction = expected.sift_fraction;
    report.warnings = expected.warnings;
    for (auto &w : validate_eve(cfg.eve, cfg.encoder)) {
        report.warnings.push_back(std::move(w));
    }

    unsigned threads = exec.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : exec.threads;
    threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, cfg.n_pulses));
    std::vector<ChunkResult> chunks(threads);
    auto chunk_begin = [&](unsigned c) {
        return cfg.n_pulses * c / threads;
    };
    if (threads == 1) {
        simulate_range(cfg, 0, cfg.n_pulses, chunks[0]);
    } else {
        std::vector<std::jthread> workers;
        workers.reserve(threads);
        for (unsigned c = 0; c < threads; c++) {
            workers.emplace_back([&, c] {
                simulate_range(cfg, chunk_begin(c), chunk_begin(c + 1), chunks[c]);
            });
        }
    }

    std::vector<Symbol> alice;
    std::vector<Classification> bob;
    for (auto &chunk : chunks) {
        accumulate(report.counts, chunk.counts);
        report.mz.port_a += chunk.port_a;
        report.mz.port_b += chunk.port_b;
        alice.insert(alice.end(), chunk.alice.begin(), chunk.alice.end());
        std::move(chunk.bob.begin(), chunk.bob.end(), std::back_inserter(bob));
    }

    SiftResult sifted = sift(alice, bob);
    report.sifted_length = sifted.key_alice.size();
    if (report.sifted_length > 0) {
        std::uint64_t mismatches = 0;
        for (size_t k = 0; k < sifted.key_alice.size(); k++) {
            mismatches += sifted.key_alice[k] != sifted.key_bob[k];
        }
        report.sifted_error_rate = static_cast<double>(mismatches) / static_cast<double>(report.sifted_length);

        RandomStream qrng(cfg.seed, kQberStreamId);
        report.qber =
            estimate_qber(sifted.key_alice, sifted.key_bob, cfg.reveal_fraction, cfg.confidence_level, qrng);

        const auto &revealed = report.qber->revealed_positions;
        size_t r = 0;
        for (std::uint64_t k = 0; k < report.sifted_length; k++) {
            if (r < revealed.size() && revealed[r] == k) {
                r++;
                continue;
            }
            report.final_key_alice.push_back(sifted.key_alice[k]);
            report.final_key_bob.push_back(sifted.key_bob[k]);
        }
    }

    std::uint64_t mz_total = report.mz.port_a + report.mz.port_b;
    report.mz.expected_port_a_honest = expected.port_a_prob;
    if (mz_total > 0) {
        report.mz.port_a_fraction = static_cast<double>(report.mz.port_a) / static_cast<double>(mz_total);
        report.mz.port_a_interval = wilson_interval(report.mz.port_a, mz_total, cfg.confidence_level);
    }
    report.verdict = mz_attack_test(report.mz.port_a, mz_total, expected.port_a_prob, cfg.mz_alpha);
    return report;
}

}  // namespace tcqkd
