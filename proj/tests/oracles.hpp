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

// Test-only reference implementations. Everything here is built the dumb
// way (explicit dense matrices, Kronecker products, naive matrix-vector
// loops) so results never share a code path with the bit-kernel library.

#pragma once

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;
using Matrix = std::vector<std::vector<cplx>>;
using Vector = std::vector<cplx>;

inline Matrix pauli(char label) {
    switch (label) {
        case 'I': return {{1, 0}, {0, 1}};
        case 'X': return {{0, 1}, {1, 0}};
        case 'Y': return {{0, cplx(0, -1)}, {cplx(0, 1), 0}};
        case 'Z': return {{1, 0}, {0, -1}};
        default: throw std::invalid_argument("oracle::pauli: bad label");
    }
}

inline Matrix kron(const Matrix& a, const Matrix& b) {
    const std::size_t ar = a.size(), ac = a[0].size();
    const std::size_t br = b.size(), bc = b[0].size();
    Matrix out(ar * br, std::vector<cplx>(ac * bc, cplx(0)));
    for (std::size_t i = 0; i < ar; ++i) {
        for (std::size_t j = 0; j < ac; ++j) {
            for (std::size_t k = 0; k < br; ++k) {
                for (std::size_t l = 0; l < bc; ++l) {
                    out[i * br + k][j * bc + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    return out;
}

/// Dense 2^n x 2^n matrix of a Pauli label string, qubit 0 as the leftmost
/// (most significant) factor — the same reading order as printed bitstrings.
inline Matrix pauli_string_matrix(const std::string& labels) {
    Matrix m = pauli(labels[0]);
    for (std::size_t q = 1; q < labels.size(); ++q) {
        m = kron(m, pauli(labels[q]));
    }
    return m;
}

inline Vector mat_vec(const Matrix& m, const Vector& v) {
    Vector out(m.size(), cplx(0));
    for (std::size_t r = 0; r < m.size(); ++r) {
        for (std::size_t c = 0; c < v.size(); ++c) {
            out[r] += m[r][c] * v[c];
        }
    }
    return out;
}

inline cplx inner(const Vector& a, const Vector& b) {
    cplx acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

/// ⟨ψ|P|ψ⟩ by dense matrix-vector product.
inline double pauli_expectation(const Vector& amps,
                                const std::string& labels) {
    return inner(amps, mat_vec(pauli_string_matrix(labels), amps)).real();
}

/// Haar-ish random pure state via normalised complex Gaussians.
inline Vector random_state(std::mt19937_64& gen, int n_qubits) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Vector amps(std::size_t{1} << n_qubits);
    double norm_sq = 0.0;
    for (auto& a : amps) {
        a = cplx(normal(gen), normal(gen));
        norm_sq += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (auto& a : amps) {
        a *= scale;
    }
    return amps;
}

/// Random single-qubit pure state, uniform on the Bloch sphere.
inline Vector random_qubit(std::mt19937_64& gen) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    const double u = 2.0 * uni(gen) - 1.0;
    const double theta = std::acos(u);
    const double phi = 2.0 * M_PI * uni(gen);
    return {std::cos(theta / 2.0),
            std::polar(std::sin(theta / 2.0), phi)};
}

inline Vector kron_vec(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) {
            out[i * b.size() + j] = a[i] * b[j];
        }
    }
    return out;
}

/// Random three-qubit product state.
inline Vector random_product_state(std::mt19937_64& gen) {
    return kron_vec(kron_vec(random_qubit(gen), random_qubit(gen)),
                    random_qubit(gen));
}

} // namespace oracle
