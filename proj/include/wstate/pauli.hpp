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
#include <complex>
#include <stdexcept>
#include <string>

namespace wstate {

/// Tensor product of single-qubit Paulis, one label in {I, X, Y, Z} per
/// qubit, qubit 0 first.
class PauliString {
  public:
    explicit PauliString(std::string labels) : labels_(std::move(labels)) {
        if (labels_.empty()) {
            throw std::invalid_argument("PauliString: empty label string");
        }
        for (char c : labels_) {
            if (c != 'I' && c != 'X' && c != 'Y' && c != 'Z') {
                throw std::invalid_argument(
                    "PauliString: labels must be I, X, Y or Z");
            }
        }
    }

    int size() const { return static_cast<int>(labels_.size()); }
    char label(int qubit) const { return labels_.at(qubit); }
    const std::string& str() const { return labels_; }
    bool is_identity() const {
        return labels_.find_first_not_of('I') == std::string::npos;
    }

  private:
    std::string labels_;
};

/// 2x2 matrix of one Pauli label, row-major.
inline std::array<std::complex<double>, 4> pauli_matrix_2x2(char label) {
    using c = std::complex<double>;
    switch (label) {
        case 'I': return {c(1), c(0), c(0), c(1)};
        case 'X': return {c(0), c(1), c(1), c(0)};
        case 'Y': return {c(0), c(0, -1), c(0, 1), c(0)};
        case 'Z': return {c(1), c(0), c(0), c(-1)};
        default: throw std::invalid_argument("pauli_matrix_2x2: bad label");
    }
}

} // namespace wstate
