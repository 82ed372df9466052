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

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "wstate/density.hpp"
#include "wstate/gates.hpp"
#include "wstate/pauli.hpp"
#include "wstate/rng.hpp"

namespace wstate {

/// Dense-vector practicality cap; 2^24 amplitudes is already 256 MiB.
inline constexpr int kMaxQubits = 24;

/**
 * @brief Dense state vector over n qubits.
 *
 * Amplitude index k encodes the basis ket read with qubit 0 first: the bit
 * of qubit q sits at position (n_qubits - 1 - q), so printed bitstrings and
 * array indices agree digit by digit.
 */
struct StateVector {
    int n_qubits = 0;
    std::vector<cplx> amps;

    std::size_t size() const { return amps.size(); }

    std::uint64_t qubit_mask(int q) const {
        return std::uint64_t{1} << (n_qubits - 1 - q);
    }

    std::string bitstring(std::uint64_t index) const {
        std::string s(static_cast<std::size_t>(n_qubits), '0');
        for (int q = 0; q < n_qubits; ++q) {
            if (index & qubit_mask(q)) {
                s[static_cast<std::size_t>(q)] = '1';
            }
        }
        return s;
    }

    double norm_sq() const {
        double total = 0.0;
        for (const cplx& a : amps) {
            total += std::norm(a);
        }
        return total;
    }
};

inline StateVector zero_state(int n_qubits) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("zero_state: qubit count out of range");
    }
    StateVector state;
    state.n_qubits = n_qubits;
    state.amps.assign(std::size_t{1} << n_qubits, cplx(0.0));
    state.amps[0] = 1.0;
    return state;
}

/// Builds a state from explicit amplitudes; rejects vectors that are not
/// normalised to 1e-10.
inline StateVector state_from_amplitudes(int n_qubits, std::vector<cplx> amps) {
    if (n_qubits < 1 || n_qubits > kMaxQubits) {
        throw std::invalid_argument("state_from_amplitudes: bad qubit count");
    }
    if (amps.size() != (std::size_t{1} << n_qubits)) {
        throw std::invalid_argument("state_from_amplitudes: length mismatch");
    }
    StateVector state{n_qubits, std::move(amps)};
    if (std::abs(state.norm_sq() - 1.0) > 1e-10) {
        throw std::invalid_argument("state_from_amplitudes: not normalised");
    }
    return state;
}

namespace detail {

inline void check_targets(const StateVector& state, const GateMatrix& gate,
                          const std::vector<int>& targets) {
    if (static_cast<int>(targets.size()) != gate.n_targets()) {
        throw std::invalid_argument("apply_gate: target count mismatch");
    }
    for (int q : targets) {
        if (q < 0 || q >= state.n_qubits) {
            throw std::out_of_range("apply_gate: qubit index out of range");
        }
    }
    if (targets.size() == 2 && targets[0] == targets[1]) {
        throw std::invalid_argument("apply_gate: duplicate target");
    }
}

} // namespace detail

/// Applies a one- or two-qubit unitary in place. Norm is preserved to
/// machine precision; no renormalisation happens here.
inline void apply_gate(StateVector& state, const GateMatrix& gate,
                       const std::vector<int>& targets) {
    detail::check_targets(state, gate, targets);
    const std::uint64_t dim = state.amps.size();
    if (gate.dim() == 2) {
        const std::uint64_t m = state.qubit_mask(targets[0]);
        const cplx g00 = gate.at(0, 0), g01 = gate.at(0, 1);
        const cplx g10 = gate.at(1, 0), g11 = gate.at(1, 1);
        for (std::uint64_t k = 0; k < dim; ++k) {
            if (k & m) {
                continue;
            }
            const cplx a0 = state.amps[k];
            const cplx a1 = state.amps[k | m];
            state.amps[k] = g00 * a0 + g01 * a1;
            state.amps[k | m] = g10 * a0 + g11 * a1;
        }
        return;
    }
    const std::uint64_t ma = state.qubit_mask(targets[0]);
    const std::uint64_t mb = state.qubit_mask(targets[1]);
    for (std::uint64_t k = 0; k < dim; ++k) {
        if (k & (ma | mb)) {
            continue;
        }
        const std::uint64_t idx[4] = {k, k | mb, k | ma, k | ma | mb};
        cplx in[4];
        for (int i = 0; i < 4; ++i) {
            in[i] = state.amps[idx[i]];
        }
        for (int r = 0; r < 4; ++r) {
            cplx out = 0.0;
            for (int c = 0; c < 4; ++c) {
                out += gate.at(r, c) * in[c];
            }
            state.amps[idx[r]] = out;
        }
    }
}

/// Outcome probabilities keyed by bitstring (qubit 0 first); zero-probability
/// outcomes are omitted. Values sum to 1 up to float rounding.
inline std::map<std::string, double> probabilities(const StateVector& state) {
    std::map<std::string, double> result;
    for (std::uint64_t k = 0; k < state.amps.size(); ++k) {
        const double p = std::norm(state.amps[k]);
        if (p > 1e-15) {
            result[state.bitstring(k)] = p;
        }
    }
    return result;
}

/// Marginal probability that qubit q reads 1.
inline double qubit_probability(const StateVector& state, int q) {
    if (q < 0 || q >= state.n_qubits) {
        throw std::out_of_range("qubit_probability: index out of range");
    }
    const std::uint64_t m = state.qubit_mask(q);
    double p1 = 0.0;
    for (std::uint64_t k = 0; k < state.amps.size(); ++k) {
        if (k & m) {
            p1 += std::norm(state.amps[k]);
        }
    }
    return p1;
}

namespace detail {

inline void collapse(StateVector& state, int q, int outcome, double p_outcome) {
    const std::uint64_t m = state.qubit_mask(q);
    const double scale = 1.0 / std::sqrt(p_outcome);
    for (std::uint64_t k = 0; k < state.amps.size(); ++k) {
        const bool bit = (k & m) != 0;
        if (bit == (outcome != 0)) {
            state.amps[k] *= scale;
        } else {
            state.amps[k] = 0.0;
        }
    }
}

} // namespace detail

/// Projective measurement of one qubit; collapses and renormalises in place,
/// returns the outcome bit.
inline int measure_qubit(StateVector& state, int q, Rng& rng) {
    const double p1 = qubit_probability(state, q);
    const int outcome = rng.uniform() < p1 ? 1 : 0;
    detail::collapse(state, q, outcome, outcome ? p1 : 1.0 - p1);
    return outcome;
}

/// Forces a measurement outcome (post-selection); returns the probability of
/// the forced branch. Throws if that branch has no support.
inline double project_qubit(StateVector& state, int q, int outcome) {
    const double p1 = qubit_probability(state, q);
    const double p = outcome ? p1 : 1.0 - p1;
    if (p < 1e-12) {
        throw std::runtime_error("project_qubit: branch has zero probability");
    }
    detail::collapse(state, q, outcome, p);
    return p;
}

/**
 * ⟨ψ|P|ψ⟩ for a Pauli string, computed with bit masks instead of a dense
 * matrix: P|b⟩ = i^{#Y} (−1)^{|b & phase_mask|} |b ^ flip_mask⟩ where
 * phase_mask marks Z and Y positions and flip_mask marks X and Y positions.
 */
inline double expectation(const StateVector& state, const PauliString& pauli) {
    if (pauli.size() != state.n_qubits) {
        throw std::invalid_argument("expectation: Pauli length mismatch");
    }
    std::uint64_t flip_mask = 0;
    std::uint64_t phase_mask = 0;
    int y_count = 0;
    for (int q = 0; q < state.n_qubits; ++q) {
        switch (pauli.label(q)) {
            case 'X': flip_mask |= state.qubit_mask(q); break;
            case 'Y':
                flip_mask |= state.qubit_mask(q);
                phase_mask |= state.qubit_mask(q);
                ++y_count;
                break;
            case 'Z': phase_mask |= state.qubit_mask(q); break;
            default: break;
        }
    }
    cplx acc = 0.0;
    for (std::uint64_t k = 0; k < state.amps.size(); ++k) {
        const double sign =
            (std::popcount(k & phase_mask) & 1) ? -1.0 : 1.0;
        acc += std::conj(state.amps[k ^ flip_mask]) * sign * state.amps[k];
    }
    static const cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
    return (acc * kIPow[y_count & 3]).real();
}

inline DensityMatrix density_from_state(const StateVector& state) {
    const Eigen::Index dim = static_cast<Eigen::Index>(state.amps.size());
    Eigen::VectorXcd v(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
        v[k] = state.amps[static_cast<std::size_t>(k)];
    }
    return DensityMatrix(state.n_qubits, v * v.adjoint());
}

namespace detail {

/// Scatters the bits of `packed` (over the `keep` qubits, in their given
/// order) and `rest` (over the remaining qubits) into a full index.
struct TraceIndexer {
    std::vector<std::uint64_t> keep_masks;
    std::vector<std::uint64_t> rest_masks;

    TraceIndexer(int n_qubits, const std::vector<int>& keep) {
        std::vector<bool> kept(static_cast<std::size_t>(n_qubits), false);
        for (int q : keep) {
            if (q < 0 || q >= n_qubits) {
                throw std::out_of_range("partial_trace: index out of range");
            }
            if (kept[static_cast<std::size_t>(q)]) {
                throw std::invalid_argument("partial_trace: duplicate index");
            }
            kept[static_cast<std::size_t>(q)] = true;
            keep_masks.push_back(std::uint64_t{1} << (n_qubits - 1 - q));
        }
        for (int q = 0; q < n_qubits; ++q) {
            if (!kept[static_cast<std::size_t>(q)]) {
                rest_masks.push_back(std::uint64_t{1} << (n_qubits - 1 - q));
            }
        }
    }

    std::uint64_t full_index(std::uint64_t packed, std::uint64_t rest) const {
        std::uint64_t idx = 0;
        for (std::size_t i = 0; i < keep_masks.size(); ++i) {
            if (packed & (std::uint64_t{1} << (keep_masks.size() - 1 - i))) {
                idx |= keep_masks[i];
            }
        }
        for (std::size_t i = 0; i < rest_masks.size(); ++i) {
            if (rest & (std::uint64_t{1} << (rest_masks.size() - 1 - i))) {
                idx |= rest_masks[i];
            }
        }
        return idx;
    }
};

} // namespace detail

/// Reduced density matrix over `keep` (order preserved as given).
inline DensityMatrix partial_trace(const StateVector& state,
                                   const std::vector<int>& keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace: empty keep set");
    }
    const detail::TraceIndexer indexer(state.n_qubits, keep);
    const int n_keep = static_cast<int>(keep.size());
    const std::uint64_t keep_dim = std::uint64_t{1} << n_keep;
    const std::uint64_t rest_dim =
        std::uint64_t{1} << (state.n_qubits - n_keep);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(
        static_cast<Eigen::Index>(keep_dim), static_cast<Eigen::Index>(keep_dim));
    for (std::uint64_t r = 0; r < keep_dim; ++r) {
        for (std::uint64_t c = 0; c < keep_dim; ++c) {
            cplx acc = 0.0;
            for (std::uint64_t rest = 0; rest < rest_dim; ++rest) {
                acc += state.amps[indexer.full_index(r, rest)] *
                       std::conj(state.amps[indexer.full_index(c, rest)]);
            }
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                acc;
        }
    }
    return DensityMatrix(n_keep, std::move(out));
}

inline DensityMatrix partial_trace(const DensityMatrix& rho,
                                   const std::vector<int>& keep) {
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace: empty keep set");
    }
    const detail::TraceIndexer indexer(rho.n_qubits, keep);
    const int n_keep = static_cast<int>(keep.size());
    const std::uint64_t keep_dim = std::uint64_t{1} << n_keep;
    const std::uint64_t rest_dim = std::uint64_t{1} << (rho.n_qubits - n_keep);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(
        static_cast<Eigen::Index>(keep_dim), static_cast<Eigen::Index>(keep_dim));
    for (std::uint64_t r = 0; r < keep_dim; ++r) {
        for (std::uint64_t c = 0; c < keep_dim; ++c) {
            cplx acc = 0.0;
            for (std::uint64_t rest = 0; rest < rest_dim; ++rest) {
                acc += rho.mat(
                    static_cast<Eigen::Index>(indexer.full_index(r, rest)),
                    static_cast<Eigen::Index>(indexer.full_index(c, rest)));
            }
            out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                acc;
        }
    }
    return DensityMatrix(n_keep, std::move(out));
}

} // namespace wstate
