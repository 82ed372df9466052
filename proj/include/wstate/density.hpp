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

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "wstate/gates.hpp"

namespace wstate {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-9;
// Negativity discarded without complaint when taking operator square roots.
inline constexpr double kEigenvalueSlack = 1e-8;

/**
 * @brief 2^n x 2^n density operator.
 *
 * Row/column index k encodes the basis ket with qubit 0 as the most
 * significant bit, matching StateVector. Hermiticity and trace are checked
 * where the spec of an operation demands it, not on every construction:
 * raw linear-inversion tomography output may carry small negative
 * eigenvalues and rounded external data may miss unit trace.
 */
struct DensityMatrix {
    int n_qubits = 0;
    Eigen::MatrixXcd mat;

    DensityMatrix() = default;
    DensityMatrix(int n, Eigen::MatrixXcd m) : n_qubits(n), mat(std::move(m)) {
        const Eigen::Index dim = Eigen::Index{1} << n_qubits;
        if (mat.rows() != dim || mat.cols() != dim) {
            throw std::invalid_argument("DensityMatrix: dimension mismatch");
        }
    }

    Eigen::Index dim() const { return mat.rows(); }

    double trace_real() const { return mat.trace().real(); }

    bool is_hermitian(double tol = kHermitianTol) const {
        return (mat - mat.adjoint()).cwiseAbs().maxCoeff() <= tol;
    }

    bool has_unit_trace(double tol = kTraceTol) const {
        return std::abs(mat.trace() - cplx(1.0)) <= tol;
    }
};

inline Eigen::VectorXd hermitian_eigenvalues(const DensityMatrix& rho) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho.mat);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("eigendecomposition failed");
    }
    return solver.eigenvalues();
}

inline double min_eigenvalue(const DensityMatrix& rho) {
    return hermitian_eigenvalues(rho).minCoeff();
}

/// Largest eigenvalue equals 1 (within tol) iff rho is pure.
inline double purity(const DensityMatrix& rho) {
    return (rho.mat * rho.mat).trace().real();
}

namespace detail {

/// Operator square root of a Hermitian PSD matrix; eigenvalues below zero are
/// clamped (tolerated up to kEigenvalueSlack of negativity).
inline Eigen::MatrixXcd psd_sqrt(const Eigen::MatrixXcd& m) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("psd_sqrt: eigendecomposition failed");
    }
    Eigen::VectorXd evals = solver.eigenvalues();
    for (Eigen::Index i = 0; i < evals.size(); ++i) {
        evals[i] = evals[i] > 0.0 ? std::sqrt(evals[i]) : 0.0;
    }
    return solver.eigenvectors() * evals.asDiagonal() *
           solver.eigenvectors().adjoint();
}

inline void require_comparable(const DensityMatrix& a, const DensityMatrix& b) {
    if (a.dim() != b.dim()) {
        throw std::invalid_argument("density matrices differ in dimension");
    }
    if (!a.is_hermitian(1e-8) || !b.is_hermitian(1e-8)) {
        throw std::invalid_argument("density matrix is not Hermitian");
    }
}

} // namespace detail

/// Uhlmann fidelity F(ρ,σ) = |Tr √(√ρ σ √ρ)|².
inline double fidelity(const DensityMatrix& rho_t, const DensityMatrix& rho_e) {
    detail::require_comparable(rho_t, rho_e);
    const Eigen::MatrixXcd root = detail::psd_sqrt(rho_t.mat);
    const Eigen::MatrixXcd inner = root * rho_e.mat * root;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(inner);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("fidelity: eigendecomposition failed");
    }
    const Eigen::VectorXd evals = solver.eigenvalues();
    // Eigenvalues that are exact zeros in exact arithmetic come back as
    // O(eps) junk; their square roots would be O(1e-8), visible next to a
    // 1e-9 tolerance. Ignore everything below numerical rank.
    const double cutoff = static_cast<double>(evals.size()) *
                          std::numeric_limits<double>::epsilon() *
                          std::max(1.0, evals.cwiseAbs().maxCoeff());
    double tr = 0.0;
    for (Eigen::Index i = 0; i < evals.size(); ++i) {
        if (evals[i] > cutoff) {
            tr += std::sqrt(evals[i]);
        }
    }
    return tr * tr;
}

/// Tr(ρσ): equals the Uhlmann fidelity when one argument is pure. Kept as an
/// independent route for cross-checks against rounded external matrices.
inline double pure_overlap_fidelity(const DensityMatrix& rho_pure,
                                    const DensityMatrix& rho) {
    detail::require_comparable(rho_pure, rho);
    return (rho_pure.mat * rho.mat).trace().real();
}

inline double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
    detail::require_comparable(a, b);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a.mat - b.mat);
    return 0.5 * solver.eigenvalues().cwiseAbs().sum();
}

} // namespace wstate
