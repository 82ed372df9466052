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

#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "wstate/circuit.hpp"
#include "wstate/sampling.hpp"
#include "wstate/tomography.hpp"

namespace wstate {

/**
 * The four measurement settings of the three-particle Mermin polynomial
 *   M = E(ABC) − E(AB'C') − E(A'B'C) − E(A'BC')
 * with unprimed observables along Z and primed ones along X. Axis strings
 * are qubit-ordered: A acts on qubit 0, B on qubit 1, C on qubit 2.
 */
struct MerminSetting {
    const char* label;
    const char* axes;
    double sign;
};

inline const std::array<MerminSetting, 4>& mermin_settings() {
    static const std::array<MerminSetting, 4> settings = {{
        {"ABC", "ZZZ", +1.0},
        {"AB'C'", "ZXX", -1.0},
        {"A'B'C", "XXZ", -1.0},
        {"A'BC'", "XZX", -1.0},
    }};
    return settings;
}

/**
 * Expectation of a three-fold ±1 observable from counts or probabilities:
 * E = Σ_b (−1)^{#1s in b} p(b). Published probability tables are used as
 * printed (no renormalisation of rounding residue).
 */
inline double expectation_from_counts(
    const std::map<std::string, double>& values, long long shots = 0) {
    if (values.empty()) {
        throw std::invalid_argument("expectation_from_counts: empty counts");
    }
    double e = 0.0;
    for (const auto& [bits, value] : values) {
        if (bits.size() != 3) {
            throw std::invalid_argument(
                "expectation_from_counts: keys must be 3-bit strings");
        }
        int ones = 0;
        for (char c : bits) {
            if (c == '1') {
                ++ones;
            } else if (c != '0') {
                throw std::invalid_argument(
                    "expectation_from_counts: malformed bitstring");
            }
        }
        const double freq =
            shots > 0 ? value / static_cast<double>(shots) : value;
        e += (ones & 1) ? -freq : freq;
    }
    return e;
}

inline double expectation_from_counts(const Counts& counts, long long shots) {
    std::map<std::string, double> values;
    for (const auto& [bits, n] : counts) {
        values[bits] = static_cast<double>(n);
    }
    return expectation_from_counts(values, shots);
}

/// |M| from the four expectation values; the classical bound is 2.
inline double mermin_value(double e_abc, double e_abpcp, double e_apbpc,
                           double e_apbcp) {
    for (double e : {e_abc, e_abpcp, e_apbpc, e_apbcp}) {
        // Rounded published tables can overshoot 1 by a whisker.
        if (!(std::abs(e) <= 1.0 + 1e-6)) {
            throw std::invalid_argument(
                "mermin_value: expectations must lie in [-1, 1]");
        }
    }
    return std::abs(e_abc - e_abpcp - e_apbpc - e_apbcp);
}

struct MerminAnalysis {
    double value = 0.0;  // |M|
    double sd = 0.0;
    std::map<std::string, double> expectations;  // keyed by setting label

    bool violates_classical_bound() const { return value > 2.0; }

    json to_json() const {
        return json{
            {"M", value}, {"sd", sd}, {"expectations", expectations}};
    }
};

/**
 * Re-analysis of a four-setting dataset (counts or probability tables).
 * When per-outcome standard deviations are present, the SD of M follows by
 * quadrature over all entries, since M is a ±1-weighted sum of them.
 */
inline MerminAnalysis mermin_from_dataset(const TomographyDataset& dataset) {
    if (dataset.n_qubits != 3) {
        throw std::invalid_argument("mermin_from_dataset: need 3 qubits");
    }
    MerminAnalysis result;
    double m = 0.0;
    double variance = 0.0;
    for (const MerminSetting& setting : mermin_settings()) {
        const auto it = dataset.settings.find(setting.axes);
        if (it == dataset.settings.end()) {
            throw std::invalid_argument(
                std::string("mermin_from_dataset: missing setting ") +
                setting.axes);
        }
        const double e =
            expectation_from_counts(it->second.values, it->second.shots);
        result.expectations[setting.label] = e;
        m += setting.sign * e;
        for (const auto& [bits, sd] : it->second.sds) {
            variance += sd * sd;
        }
    }
    result.value = std::abs(m);
    result.sd = std::sqrt(variance);
    return result;
}

/**
 * Samples the four Mermin settings against a three-qubit preparation
 * circuit, `repetitions` independent times, and reports mean |M| with the
 * sample standard deviation across repetitions.
 */
inline MerminAnalysis mermin_experiment(const Circuit& state_circuit,
                                        long long shots, std::uint64_t seed,
                                        int repetitions = 5,
                                        const NoiseModel* noise = nullptr) {
    if (state_circuit.n_qubits() != 3) {
        throw std::invalid_argument("mermin_experiment: need a 3-qubit circuit");
    }
    if (shots < 1 || repetitions < 1) {
        throw std::invalid_argument(
            "mermin_experiment: shots and repetitions must be >= 1");
    }
    const Rng master(seed);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(repetitions));
    MerminAnalysis result;
    for (int rep = 0; rep < repetitions; ++rep) {
        const Rng rep_rng =
            master.substream(static_cast<std::uint64_t>(rep));
        double m = 0.0;
        for (std::size_t i = 0; i < mermin_settings().size(); ++i) {
            const MerminSetting& setting = mermin_settings()[i];
            Circuit circ(3, 3);
            circ.extend(state_circuit);
            circ.extend(basis_rotation(setting.axes));
            const Counts counts =
                sample_counts(circ, shots, rep_rng.substream(i).seed(), noise);
            const double e = expectation_from_counts(counts, shots);
            m += setting.sign * e;
            if (rep == 0) {
                result.expectations[setting.label] = e;
            }
        }
        values.push_back(std::abs(m));
    }
    double mean = 0.0;
    for (double v : values) {
        mean += v;
    }
    mean /= values.size();
    double var = 0.0;
    for (double v : values) {
        var += (v - mean) * (v - mean);
    }
    result.value = mean;
    result.sd = values.size() > 1
                    ? std::sqrt(var / (static_cast<double>(values.size()) - 1))
                    : 0.0;
    return result;
}

/// Exact |M| of a state under the Z/X settings, via the expectation kernel.
inline double mermin_exact(const StateVector& state) {
    double m = 0.0;
    for (const MerminSetting& setting : mermin_settings()) {
        m += setting.sign * expectation(state, PauliString(setting.axes));
    }
    return std::abs(m);
}

} // namespace wstate
