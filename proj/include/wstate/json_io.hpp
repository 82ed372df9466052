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

#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "wstate/density.hpp"

namespace wstate {

using json = nlohmann::json;

/// Complex numbers serialise as [re, im].
inline json complex_to_json(const cplx& z) {
    return json::array({z.real(), z.imag()});
}

inline cplx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw std::invalid_argument("expected [re, im] pair");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

/// Matrices serialise as row-major arrays of [re, im] pairs.
inline json matrix_to_json(const Eigen::MatrixXcd& m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            row.push_back(complex_to_json(m(r, c)));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

inline Eigen::MatrixXcd matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) {
        throw std::invalid_argument("expected a non-empty array of rows");
    }
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
    Eigen::MatrixXcd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        if (static_cast<Eigen::Index>(j[r].size()) != cols) {
            throw std::invalid_argument("ragged matrix rows");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = complex_from_json(j[r][c]);
        }
    }
    return m;
}

inline json density_to_json(const DensityMatrix& rho) {
    return json{{"n_qubits", rho.n_qubits}, {"rho", matrix_to_json(rho.mat)}};
}

/// Accepts either {"n_qubits":k,"rho":[...]} or a bare matrix array.
inline DensityMatrix density_from_json(const json& j) {
    const json& m = j.is_object() ? j.at("rho") : j;
    Eigen::MatrixXcd mat = matrix_from_json(m);
    if (mat.rows() != mat.cols()) {
        throw std::invalid_argument("density matrix must be square");
    }
    int n = 0;
    while ((Eigen::Index{1} << n) < mat.rows()) {
        ++n;
    }
    if ((Eigen::Index{1} << n) != mat.rows()) {
        throw std::invalid_argument("density matrix dimension not a power of 2");
    }
    return DensityMatrix(n, std::move(mat));
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open file: " + path);
    }
    json j;
    in >> j;
    return j;
}

inline void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write file: " + path);
    }
    out << j.dump(2) << "\n";
}

} // namespace wstate
