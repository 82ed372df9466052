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
#include <limits>
#include <stdexcept>
#include <vector>

#include <json.hpp>

#include "wstate/rng.hpp"

namespace wstate {

/**
 * @brief Stochastic Pauli error model.
 *
 * After every gate, each touched qubit independently receives a uniformly
 * random non-identity Pauli with probability p1 (one-qubit gates) or p2
 * (two-qubit gates). At measurement the recorded bit flips 0→1 with
 * probability r01 and 1→0 with r10; the collapsed quantum state keeps the
 * true outcome. Noise is sampled per shot (trajectory style), so the state
 * vector stays pure throughout.
 */
struct NoiseModel {
    double p1 = 0.0;
    double p2 = 0.0;
    double r01 = 0.0;
    double r10 = 0.0;

    void validate() const {
        for (double p : {p1, p2, r01, r10}) {
            if (!(p >= 0.0 && p <= 1.0)) {
                throw std::invalid_argument(
                    "NoiseModel: probabilities must lie in [0, 1]");
            }
        }
    }

    bool is_zero() const {
        return p1 == 0.0 && p2 == 0.0 && r01 == 0.0 && r10 == 0.0;
    }

    bool has_gate_noise() const { return p1 > 0.0 || p2 > 0.0; }
    bool has_readout_noise() const { return r01 > 0.0 || r10 > 0.0; }

    /// Recorded-bit flip at measurement.
    int flip_readout(int bit, Rng& rng) const {
        const double p = bit ? r10 : r01;
        if (p > 0.0 && rng.uniform() < p) {
            return 1 - bit;
        }
        return bit;
    }

    nlohmann::json to_json() const {
        return {{"p1", p1}, {"p2", p2}, {"r01", r01}, {"r10", r10}};
    }

    static NoiseModel from_json(const nlohmann::json& j) {
        NoiseModel m;
        m.p1 = j.value("p1", 0.0);
        m.p2 = j.value("p2", 0.0);
        m.r01 = j.value("r01", 0.0);
        m.r10 = j.value("r10", 0.0);
        m.validate();
        return m;
    }
};

/// Depolarising sweep grid for calibration. Readout probabilities are held
/// fixed during the search; the 0.02 symmetric default is an artifact
/// choice, not a measured device figure.
struct SweepGrid {
    std::vector<double> p1_values{0.0};
    std::vector<double> p2_values{0.0};
    double r01 = 0.02;
    double r10 = 0.02;
};

struct CalibrationResult {
    NoiseModel model;
    double achieved_fidelity = 0.0;
    // False when no grid point lands within `band` of the target; the
    // nearest point is still returned.
    bool within_band = false;
};

/**
 * Grid-searches (p1, p2) for the model whose experiment fidelity is closest
 * to `target`. `experiment` maps a NoiseModel to a fidelity estimate and is
 * expected to be deterministic for reproducibility.
 */
template <class Experiment>
CalibrationResult calibrate(double target, Experiment&& experiment,
                            const SweepGrid& grid, double band = 0.02) {
    if (!(target > 0.0 && target <= 1.0)) {
        throw std::invalid_argument("calibrate: target must lie in (0, 1]");
    }
    CalibrationResult best;
    double best_gap = std::numeric_limits<double>::infinity();
    for (double p1 : grid.p1_values) {
        for (double p2 : grid.p2_values) {
            NoiseModel model{p1, p2, grid.r01, grid.r10};
            model.validate();
            const double achieved = experiment(model);
            const double gap = std::abs(achieved - target);
            if (gap < best_gap) {
                best_gap = gap;
                best.model = model;
                best.achieved_fidelity = achieved;
            }
        }
    }
    best.within_band = best_gap <= band;
    return best;
}

} // namespace wstate
