// Copyright 2026 The wstate authors
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

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "wstate/circuit.hpp"
#include "wstate/noise.hpp"
#include "wstate/parallel.hpp"
#include "wstate/rng.hpp"
#include "wstate/statevector.hpp"

namespace wstate {

using Counts = std::map<std::string, long long>;

namespace detail {

/// Draws one basis index from the state's distribution.
inline std::uint64_t sample_index(const std::vector<double>& cumulative,
                                  Rng& rng) {
    const double u = rng.uniform() * cumulative.back();
    std::size_t lo = 0;
    std::size_t hi = cumulative.size() - 1;
    while (lo < hi) {
        const std::size_t mid = (lo + hi) / 2;
        if (cumulative[mid] > u) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

inline std::vector<double> cumulative_probabilities(const StateVector& state) {
    std::vector<double> cum(state.amps.size());
    double running = 0.0;
    for (std::size_t k = 0; k < state.amps.size(); ++k) {
        running += std::norm(state.amps[k]);
        cum[k] = running;
    }
    return cum;
}

inline std::string apply_readout_flips(std::string bits,
                                       const NoiseModel& noise, Rng& rng) {
    for (char& c : bits) {
        c = noise.flip_readout(c - '0', rng) ? '1' : '0';
    }
    return bits;
}

inline void merge_counts(Counts& into, const Counts& from) {
    for (const auto& [key, n] : from) {
        into[key] += n;
    }
}

} // namespace detail

/// Samples `shots` computational-basis outcomes from a fixed state. Each
/// shot draws from its own substream, so counts are reproducible and
/// independent of threading. Readout flips from `noise` apply per shot.
inline Counts sample_counts(const StateVector& state, long long shots,
                            std::uint64_t seed,
                            const NoiseModel* noise = nullptr) {
    if (shots < 1) {
        throw std::invalid_argument("sample_counts: shots must be >= 1");
    }
    const bool flips = noise != nullptr && noise->has_readout_noise();
    const std::vector<double> cum = detail::cumulative_probabilities(state);
    const Rng master(seed);
    std::vector<Counts> partial(static_cast<std::size_t>(max_threads()));
    parallel_chunks(shots, [&](int chunk, std::int64_t begin,
                               std::int64_t end) {
        Counts local;
        for (std::int64_t shot = begin; shot < end; ++shot) {
            Rng rng = master.substream(static_cast<std::uint64_t>(shot));
            std::string bits =
                state.bitstring(detail::sample_index(cum, rng));
            if (flips) {
                bits = detail::apply_readout_flips(std::move(bits), *noise,
                                                   rng);
            }
            ++local[bits];
        }
        partial[static_cast<std::size_t>(chunk)] = std::move(local);
    });
    Counts counts;
    for (const Counts& c : partial) {
        detail::merge_counts(counts, c);
    }
    return counts;
}

/// Gate-only part of a terminal-measure circuit, evolved once.
inline StateVector execute_gates_only(const Circuit& circuit) {
    StateVector state = zero_state(circuit.n_qubits());
    for (const Operation& op : circuit.ops()) {
        if (op.condition) {
            throw std::invalid_argument(
                "execute_gates_only: conditioned operation needs trajectory "
                "execution");
        }
        if (op.kind != Operation::Kind::Gate) {
            continue;
        }
        if (op.name == "custom2q") {
            apply_gate(state, *op.matrix, op.targets);
        } else {
            std::array<double, 3> params{};
            for (std::size_t i = 0; i < op.params.size() && i < 3; ++i) {
                params[i] = op.params[i];
            }
            apply_gate(state, named_gate(op.name, params), op.targets);
        }
    }
    return state;
}

/**
 * Samples a circuit for `shots` shots.
 *
 * Without gate noise, circuits that are unitary evolution plus terminal
 * measurements are simulated once and sampled from the final distribution.
 * Anything else (gate noise, mid-circuit measurement, conditions, resets)
 * runs one trajectory per shot. Keys are the classical-bit record when the
 * circuit measures, the full qubit bitstring otherwise.
 */
inline Counts sample_counts(const Circuit& circuit, long long shots,
                            std::uint64_t seed,
                            const NoiseModel* noise = nullptr) {
    if (shots < 1) {
        throw std::invalid_argument("sample_counts: shots must be >= 1");
    }
    const bool gate_noise = noise != nullptr && noise->has_gate_noise();
    const Rng master(seed);

    if (!gate_noise && circuit.is_terminal_measure_only()) {
        StateVector state = execute_gates_only(circuit);
        return sample_counts(state, shots, seed, noise);
    }

    std::vector<Counts> partial(static_cast<std::size_t>(max_threads()));
    parallel_chunks(shots, [&](int chunk, std::int64_t begin,
                               std::int64_t end) {
        Counts local;
        for (std::int64_t shot = begin; shot < end; ++shot) {
            Rng rng = master.substream(static_cast<std::uint64_t>(shot));
            ExecutionResult r = execute(circuit, rng, noise);
            std::string bits;
            if (circuit.has_measurement()) {
                bits.resize(r.clbits.size());
                for (std::size_t i = 0; i < r.clbits.size(); ++i) {
                    bits[i] = r.clbits[i] ? '1' : '0';
                }
            } else {
                bits = r.state.bitstring(
                    detail::sample_index(
                        detail::cumulative_probabilities(r.state), rng));
                if (noise != nullptr && noise->has_readout_noise()) {
                    bits = detail::apply_readout_flips(std::move(bits),
                                                       *noise, rng);
                }
            }
            ++local[bits];
        }
        partial[static_cast<std::size_t>(chunk)] = std::move(local);
    });
    Counts counts;
    for (const Counts& c : partial) {
        detail::merge_counts(counts, c);
    }
    return counts;
}

struct OutcomeStats {
    double mean_probability = 0.0;
    double sd = 0.0;
};

/**
 * Repeats a sampling experiment and reports, per outcome, the mean relative
 * frequency and its sample standard deviation across repetitions (the
 * error-bar convention used for histogram whiskers).
 */
inline std::map<std::string, OutcomeStats> repeat_probability_stats(
    const Circuit& circuit, long long shots, int repetitions,
    std::uint64_t seed, const NoiseModel* noise = nullptr) {
    if (repetitions < 1) {
        throw std::invalid_argument(
            "repeat_probability_stats: repetitions must be >= 1");
    }
    const Rng master(seed);
    std::vector<Counts> reps;
    reps.reserve(static_cast<std::size_t>(repetitions));
    for (int r = 0; r < repetitions; ++r) {
        reps.push_back(sample_counts(
            circuit, shots,
            master.substream(static_cast<std::uint64_t>(r)).seed(), noise));
    }
    std::map<std::string, OutcomeStats> stats;
    std::set<std::string> outcomes;
    for (const Counts& c : reps) {
        for (const auto& [bits, n] : c) {
            outcomes.insert(bits);
        }
    }
    for (const std::string& bits : outcomes) {
        double mean = 0.0;
        for (const Counts& c : reps) {
            const auto it = c.find(bits);
            mean += it == c.end() ? 0.0
                                  : static_cast<double>(it->second) /
                                        static_cast<double>(shots);
        }
        mean /= repetitions;
        double var = 0.0;
        for (const Counts& c : reps) {
            const auto it = c.find(bits);
            const double p = it == c.end()
                                 ? 0.0
                                 : static_cast<double>(it->second) /
                                       static_cast<double>(shots);
            var += (p - mean) * (p - mean);
        }
        const double sd =
            repetitions > 1 ? std::sqrt(var / (repetitions - 1)) : 0.0;
        stats[bits] = OutcomeStats{mean, sd};
    }
    return stats;
}

} // namespace wstate
