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

#include "wstate/circuit.hpp"
#include "wstate/statevector.hpp"

namespace wstate {

/**
 * Circuit preparing the three-qubit W-class state with outcome weights
 * (1/4, 1/4, 1/2) on |100⟩, |010⟩, |001⟩ and real non-negative amplitudes.
 *
 * Synthesis is a controlled-rotation cascade over five primitive gates:
 *
 *   X q2                          |001⟩
 *   CU3(π/3)        q2 → q0       √3/2 |001⟩ + 1/2 |101⟩
 *   CNOT            q0 → q2       √3/2 |001⟩ + 1/2 |100⟩
 *   CU3(2 asin(1/√3)) q2 → q1     √2/2 |001⟩ + 1/2 |011⟩ + 1/2 |100⟩
 *   CNOT            q1 → q2       √2/2 |001⟩ + 1/2 |010⟩ + 1/2 |100⟩
 */
inline Circuit perfect_w_circuit() {
    Circuit c(3, 3);
    c.x(2);
    c.custom2q(controlled(u3_matrix(M_PI / 3.0, 0.0, 0.0)), 2, 0);
    c.cnot(0, 2);
    c.custom2q(controlled(u3_matrix(2.0 * std::asin(1.0 / std::sqrt(3.0)),
                                    0.0, 0.0)),
               2, 1);
    c.cnot(1, 2);
    return c;
}

/**
 * Three-qubit W-class family
 *   (1/√(2+2s)) (|100⟩ + √s e^{iφ₁}|010⟩ + √(s+1) e^{iφ₂}|001⟩),
 * built directly from amplitudes.
 */
inline StateVector general_w_state(double s, double phi1, double phi2) {
    if (!(s >= 0.0)) {
        throw std::invalid_argument("general_w_state: s must be >= 0");
    }
    const double norm = 1.0 / std::sqrt(2.0 + 2.0 * s);
    std::vector<cplx> amps(8, cplx(0.0));
    amps[0b100] = norm;
    amps[0b010] = norm * std::sqrt(s) * std::polar(1.0, phi1);
    amps[0b001] = norm * std::sqrt(s + 1.0) * std::polar(1.0, phi2);
    return state_from_amplitudes(3, std::move(amps));
}

/// The s = 1, zero-phase member: 1/2 (|100⟩ + |010⟩ + √2 |001⟩).
inline StateVector perfect_w_state() { return general_w_state(1.0, 0.0, 0.0); }

/// Equal-weight single-excitation superposition over n qubits.
inline StateVector maximal_w_state(int n_qubits) {
    if (n_qubits < 2) {
        throw std::invalid_argument("maximal_w_state: need at least 2 qubits");
    }
    if (n_qubits > kMaxQubits) {
        throw std::invalid_argument("maximal_w_state: qubit count out of range");
    }
    std::vector<cplx> amps(std::size_t{1} << n_qubits, cplx(0.0));
    const double a = 1.0 / std::sqrt(static_cast<double>(n_qubits));
    for (int q = 0; q < n_qubits; ++q) {
        amps[std::size_t{1} << (n_qubits - 1 - q)] = a;
    }
    return state_from_amplitudes(n_qubits, std::move(amps));
}

/// One-qubit message preparation used by the splitting demo:
/// U3(π/3, 0, 0), then T†, S†, H.
inline Circuit message_prep_circuit() {
    Circuit c(1, 1);
    c.u3(0, M_PI / 3.0, 0.0, 0.0);
    c.tdg(0);
    c.sdg(0);
    c.h(0);
    return c;
}

} // namespace wstate
