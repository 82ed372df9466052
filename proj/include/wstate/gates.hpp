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
#include <complex>
#include <stdexcept>
#include <string>

namespace wstate {

using cplx = std::complex<double>;

inline constexpr double kUnitarityTol = 1e-10;

/**
 * @brief A one- or two-qubit unitary, stored row-major.
 *
 * Construction verifies finiteness and unitarity (max-norm of U†U − I below
 * 1e-10), so any matrix that reaches a state vector is a valid gate. For
 * two-qubit gates the 4x4 matrix acts on |t0 t1⟩ where t0 is the first
 * target and supplies the high bit of the 2-bit block index.
 */
class GateMatrix {
  public:
    GateMatrix(int dim, const std::array<cplx, 16>& entries)
        : dim_(dim), m_(entries) {
        if (dim != 2 && dim != 4) {
            throw std::invalid_argument("GateMatrix: dim must be 2 or 4");
        }
        validate();
    }

    static GateMatrix one_qubit(cplx m00, cplx m01, cplx m10, cplx m11) {
        return GateMatrix(2, {m00, m01, m10, m11});
    }

    static GateMatrix two_qubit(const std::array<cplx, 16>& entries) {
        return GateMatrix(4, entries);
    }

    int dim() const { return dim_; }
    int n_targets() const { return dim_ == 2 ? 1 : 2; }
    cplx at(int row, int col) const { return m_[row * dim_ + col]; }

    bool operator==(const GateMatrix& other) const {
        if (dim_ != other.dim_) {
            return false;
        }
        for (int i = 0; i < dim_ * dim_; ++i) {
            if (m_[i] != other.m_[i]) {
                return false;
            }
        }
        return true;
    }

  private:
    void validate() const {
        for (int i = 0; i < dim_ * dim_; ++i) {
            if (!std::isfinite(m_[i].real()) || !std::isfinite(m_[i].imag())) {
                throw std::invalid_argument("GateMatrix: non-finite entry");
            }
        }
        // U†U == I entrywise.
        for (int i = 0; i < dim_; ++i) {
            for (int j = 0; j < dim_; ++j) {
                cplx dot = 0.0;
                for (int k = 0; k < dim_; ++k) {
                    dot += std::conj(at(k, i)) * at(k, j);
                }
                const cplx expected = (i == j) ? cplx(1.0) : cplx(0.0);
                if (std::abs(dot - expected) > kUnitarityTol) {
                    throw std::invalid_argument("GateMatrix: not unitary");
                }
            }
        }
    }

    int dim_;
    std::array<cplx, 16> m_;
};

/**
 * General one-qubit rotation, OpenQASM-2 convention:
 *
 *   [[ cos(θ/2),            -e^{iλ} sin(θ/2)      ],
 *    [ e^{iφ} sin(θ/2),      e^{i(φ+λ)} cos(θ/2)  ]]
 */
inline GateMatrix u3_matrix(double theta, double phi, double lambda) {
    if (!std::isfinite(theta) || !std::isfinite(phi) || !std::isfinite(lambda)) {
        throw std::invalid_argument("u3_matrix: non-finite angle");
    }
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    const cplx eil = std::polar(1.0, lambda);
    const cplx eip = std::polar(1.0, phi);
    return GateMatrix::one_qubit(c, -eil * s, eip * s, eip * eil * c);
}

namespace gates {

inline GateMatrix identity() { return GateMatrix::one_qubit(1, 0, 0, 1); }
inline GateMatrix x() { return GateMatrix::one_qubit(0, 1, 1, 0); }
inline GateMatrix y() {
    return GateMatrix::one_qubit(0, cplx(0, -1), cplx(0, 1), 0);
}
inline GateMatrix z() { return GateMatrix::one_qubit(1, 0, 0, -1); }
inline GateMatrix h() {
    const double r = 1.0 / std::sqrt(2.0);
    return GateMatrix::one_qubit(r, r, r, -r);
}
inline GateMatrix s() { return GateMatrix::one_qubit(1, 0, 0, cplx(0, 1)); }
inline GateMatrix sdg() { return GateMatrix::one_qubit(1, 0, 0, cplx(0, -1)); }
inline GateMatrix t() {
    return GateMatrix::one_qubit(1, 0, 0, std::polar(1.0, M_PI / 4));
}
inline GateMatrix tdg() {
    return GateMatrix::one_qubit(1, 0, 0, std::polar(1.0, -M_PI / 4));
}

/// CNOT with the first target as control.
inline GateMatrix cnot() {
    return GateMatrix::two_qubit({1, 0, 0, 0,  //
                                  0, 1, 0, 0,  //
                                  0, 0, 0, 1,  //
                                  0, 0, 1, 0});
}

inline GateMatrix cz() {
    return GateMatrix::two_qubit({1, 0, 0, 0,  //
                                  0, 1, 0, 0,  //
                                  0, 0, 1, 0,  //
                                  0, 0, 0, -1});
}

} // namespace gates

/// Promotes a one-qubit gate to its controlled form; control is the first
/// target of the resulting two-qubit gate.
inline GateMatrix controlled(const GateMatrix& u) {
    if (u.dim() != 2) {
        throw std::invalid_argument("controlled: expected a one-qubit gate");
    }
    return GateMatrix::two_qubit({1, 0, 0, 0,                       //
                                  0, 1, 0, 0,                       //
                                  0, 0, u.at(0, 0), u.at(0, 1),     //
                                  0, 0, u.at(1, 0), u.at(1, 1)});
}

/// Resolves the named-gate vocabulary used by the circuit IR.
inline GateMatrix named_gate(const std::string& name,
                             const std::array<double, 3>& params = {}) {
    if (name == "x") return gates::x();
    if (name == "y") return gates::y();
    if (name == "z") return gates::z();
    if (name == "h") return gates::h();
    if (name == "s") return gates::s();
    if (name == "sdg") return gates::sdg();
    if (name == "t") return gates::t();
    if (name == "tdg") return gates::tdg();
    if (name == "u3") return u3_matrix(params[0], params[1], params[2]);
    if (name == "cnot") return gates::cnot();
    if (name == "cz") return gates::cz();
    throw std::invalid_argument("named_gate: unknown gate '" + name + "'");
}

} // namespace wstate
