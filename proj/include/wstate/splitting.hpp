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
#include <optional>
#include <vector>

#include "wstate/circuit.hpp"
#include "wstate/density.hpp"
#include "wstate/json_io.hpp"
#include "wstate/statevector.hpp"
#include "wstate/w_states.hpp"

namespace wstate {

/// One-qubit message α|0⟩ + β|1⟩.
struct MessageState {
    cplx alpha = 1.0;
    cplx beta = 0.0;

    MessageState() = default;
    MessageState(cplx a, cplx b) : alpha(a), beta(b) {
        const double norm = std::norm(alpha) + std::norm(beta);
        if (std::abs(norm - 1.0) > 1e-10) {
            throw std::invalid_argument("MessageState: not normalised");
        }
    }

    StateVector to_state() const {
        return state_from_amplitudes(1, {alpha, beta});
    }

    /// u3 angles (θ, φ) with λ = 0 preparing this message from |0⟩ up to
    /// global phase.
    std::pair<double, double> prep_angles() const {
        const double theta = 2.0 * std::atan2(std::abs(beta), std::abs(alpha));
        double phi = 0.0;
        if (std::abs(beta) > 1e-15 && std::abs(alpha) > 1e-15) {
            phi = std::arg(beta) - std::arg(alpha);
        } else if (std::abs(alpha) <= 1e-15) {
            phi = std::arg(beta);
        }
        return {theta, phi};
    }
};

/// Message prepared by a one-qubit gate circuit acting on |0⟩.
inline MessageState message_from_circuit(const Circuit& prep) {
    if (prep.n_qubits() != 1 || prep.has_measurement()) {
        throw std::invalid_argument(
            "message_from_circuit: need a measurement-free 1-qubit circuit");
    }
    const StateVector state = ideal_state(prep);
    return MessageState(state.amps[0], state.amps[1]);
}

/// Bell-measurement record: b_z from the Hadamard-side qubit (phase bit),
/// b_x from the other (parity bit).
struct BellOutcome {
    int b_z = 0;
    int b_x = 0;

    bool operator==(const BellOutcome&) const = default;
};

inline const std::array<BellOutcome, 4>& all_bell_outcomes() {
    static const std::array<BellOutcome, 4> outcomes = {
        {{0, 0}, {0, 1}, {1, 0}, {1, 1}}};
    return outcomes;
}

/**
 * Four-qubit joint state of message ⊗ channel with q0 the message, q1
 * Alice's channel qubit, q2 Bob's, q3 Charlie's. The channel is the
 * perfect-W with the √2 weight on q1:
 *   1/2 (|0·001⟩ + |0·010⟩ + √2|0·100⟩) α + (same with leading 1) β.
 */
inline StateVector joint_state(const MessageState& msg) {
    std::vector<cplx> amps(16, cplx(0.0));
    const double half = 0.5;
    const double root2_half = std::sqrt(2.0) / 2.0;
    amps[0b0001] = msg.alpha * half;
    amps[0b0010] = msg.alpha * half;
    amps[0b0100] = msg.alpha * root2_half;
    amps[0b1001] = msg.beta * half;
    amps[0b1010] = msg.beta * half;
    amps[0b1100] = msg.beta * root2_half;
    return state_from_amplitudes(4, std::move(amps));
}

/// Channel-preparation gates over (q1, q2, q3) of a 4-qubit register: the
/// perfect-W builder with its heavy qubit mapped onto q1.
inline Circuit channel_prep_circuit() {
    return remap_qubits(perfect_w_circuit(), {3, 2, 1}, 4, 2);
}

/**
 * Projects (qa, qb) onto the Bell basis: CNOT(qa→qb), H(qa), then measure
 * both. Without `forced`, outcomes are sampled; with it, the state is
 * post-selected onto the requested branch and the branch probability is
 * returned through the outcome's probability field of the caller's choosing.
 */
inline std::pair<BellOutcome, double> bell_measurement(
    StateVector& state, int qa, int qb, Rng& rng,
    std::optional<BellOutcome> forced = std::nullopt) {
    if (qa == qb) {
        throw std::invalid_argument("bell_measurement: indices must differ");
    }
    apply_gate(state, gates::cnot(), {qa, qb});
    apply_gate(state, gates::h(), {qa});
    BellOutcome outcome;
    double probability = 1.0;
    if (forced) {
        probability *= project_qubit(state, qa, forced->b_z);
        probability *= project_qubit(state, qb, forced->b_x);
        outcome = *forced;
    } else {
        outcome.b_z = measure_qubit(state, qa, rng);
        outcome.b_x = measure_qubit(state, qb, rng);
    }
    return {outcome, probability};
}

/**
 * Two-qubit unitary on (q2, q3) that concentrates the channel excitation on
 * Bob and leaves Charlie in |0⟩. The protocol only populates |00⟩ and the
 * triplet combination (|01⟩+|10⟩)/√2, which map to |10⟩ and |00⟩; the
 * remaining two columns are completed unitarily via the singlet → |11⟩ and
 * |11⟩ → |01⟩.
 */
inline GateMatrix receiver_unitary() {
    const double r = 1.0 / std::sqrt(2.0);
    return GateMatrix::two_qubit({0, r, r, 0,     //
                                  0, 0, 0, 1,     //
                                  1, 0, 0, 0,     //
                                  0, r, -r, 0});
}

/**
 * Pauli corrections on Bob's qubit for each Bell outcome, solved from the
 * four branches of the protocol: X when the parity bit is set, then Z when
 * the phase bit is set.
 */
inline std::vector<std::string> correction_for(const BellOutcome& outcome) {
    if ((outcome.b_z != 0 && outcome.b_z != 1) ||
        (outcome.b_x != 0 && outcome.b_x != 1)) {
        throw std::invalid_argument("correction_for: bits must be 0 or 1");
    }
    std::vector<std::string> gates;
    if (outcome.b_x) {
        gates.push_back("x");
    }
    if (outcome.b_z) {
        gates.push_back("z");
    }
    return gates;
}

/**
 * The full splitting circuit: message preparation on q0, channel on
 * q1–q3, Bell measurement of (q0, q1) into clbits (0, 1), the receiver
 * unitary on (q2, q3) and the classically-conditioned X/Z corrections on
 * q2. Clbit 0 carries b_z, clbit 1 carries b_x.
 */
inline Circuit splitting_circuit(const MessageState& msg,
                                 bool with_corrections = true) {
    Circuit c(4, 2);
    const auto [theta, phi] = msg.prep_angles();
    c.u3(0, theta, phi, 0.0);
    c.extend(channel_prep_circuit());
    c.cnot(0, 1);
    c.h(0);
    c.measure(0, 0);
    c.measure(1, 1);
    c.custom2q(receiver_unitary(), 2, 3);
    if (with_corrections) {
        c.x(2, Condition{1, 1});
        c.z(2, Condition{0, 1});
    }
    return c;
}

struct ProtocolResult {
    BellOutcome outcome;
    DensityMatrix bob_state;       // reduced state of q2 after corrections
    double charlie_p0 = 0.0;       // P(q3 = 0) at the end of the run
    double fidelity = 0.0;         // F(message, bob_state)
    double branch_probability = 1.0;  // < 1 only in forced-outcome mode

    json to_json() const {
        return json{{"outcome", {outcome.b_z, outcome.b_x}},
                    {"bob_rho", matrix_to_json(bob_state.mat)},
                    {"charlie_p0", charlie_p0},
                    {"fidelity", fidelity}};
    }
};

/**
 * One end-to-end protocol run: preparation, Bell measurement, receiver
 * unitary, conditioned corrections, then Bob's reduced state and its
 * fidelity against the message. `forced` post-selects a Bell branch
 * (readout noise does not apply to forced outcomes).
 */
inline ProtocolResult run_protocol(const MessageState& msg, std::uint64_t seed,
                                   const NoiseModel* noise = nullptr,
                                   std::optional<BellOutcome> forced =
                                       std::nullopt) {
    const Circuit circuit = splitting_circuit(msg);
    Rng rng(seed);
    std::map<int, int> forced_clbits;
    const std::map<int, int>* forced_ptr = nullptr;
    if (forced) {
        forced_clbits = {{0, forced->b_z}, {1, forced->b_x}};
        forced_ptr = &forced_clbits;
    }
    const ExecutionResult exec = execute(circuit, rng, noise, forced_ptr);
    ProtocolResult result;
    result.outcome = BellOutcome{exec.clbits[0], exec.clbits[1]};
    result.branch_probability = exec.branch_probability;
    result.bob_state = partial_trace(exec.state, {2});
    result.charlie_p0 = 1.0 - qubit_probability(exec.state, 3);
    result.fidelity =
        fidelity(density_from_state(msg.to_state()), result.bob_state);
    return result;
}

struct ProtocolBatch {
    int runs = 0;
    double fidelity_mean = 0.0;
    double fidelity_sd = 0.0;
    double charlie_p0_mean = 0.0;
    DensityMatrix bob_state_mean;  // trajectory-averaged Bob state
    std::vector<ProtocolResult> results;
};

/// Repeated protocol runs with per-run substreams. Fidelity of the averaged
/// Bob state equals the mean per-run fidelity because the message is pure.
inline ProtocolBatch run_protocol_batch(const MessageState& msg, int runs,
                                        std::uint64_t seed,
                                        const NoiseModel* noise = nullptr,
                                        std::optional<BellOutcome> forced =
                                            std::nullopt,
                                        bool keep_runs = true) {
    if (runs < 1) {
        throw std::invalid_argument("run_protocol_batch: runs must be >= 1");
    }
    ProtocolBatch batch;
    batch.runs = runs;
    const Rng master(seed);
    Eigen::MatrixXcd rho_sum = Eigen::MatrixXcd::Zero(2, 2);
    double f_sum = 0.0;
    double f_sq_sum = 0.0;
    double c_sum = 0.0;
    for (int r = 0; r < runs; ++r) {
        ProtocolResult result = run_protocol(
            msg, master.substream(static_cast<std::uint64_t>(r)).seed(), noise,
            forced);
        f_sum += result.fidelity;
        f_sq_sum += result.fidelity * result.fidelity;
        c_sum += result.charlie_p0;
        rho_sum += result.bob_state.mat;
        if (keep_runs) {
            batch.results.push_back(std::move(result));
        }
    }
    batch.fidelity_mean = f_sum / runs;
    batch.charlie_p0_mean = c_sum / runs;
    const double var =
        runs > 1 ? (f_sq_sum - runs * batch.fidelity_mean *
                                   batch.fidelity_mean) /
                       (runs - 1)
                 : 0.0;
    batch.fidelity_sd = var > 0.0 ? std::sqrt(var) : 0.0;
    batch.bob_state_mean = DensityMatrix(1, rho_sum / static_cast<double>(runs));
    return batch;
}

} // namespace wstate
