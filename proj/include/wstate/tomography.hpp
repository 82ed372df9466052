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
#include <map>
#include <string>
#include <vector>

#include "wstate/circuit.hpp"
#include "wstate/density.hpp"
#include "wstate/json_io.hpp"
#include "wstate/pauli.hpp"
#include "wstate/sampling.hpp"

namespace wstate {

/// Per-qubit measurement axis string over {X, Y, Z}, qubit 0 first.
using BasisSetting = std::string;

/// All 3^n axis combinations, lexicographic with per-qubit order Z, X, Y
/// (so the computational setting comes first).
inline std::vector<BasisSetting> tomography_settings(int n_qubits) {
    if (n_qubits < 1) {
        throw std::invalid_argument("tomography_settings: need >= 1 qubit");
    }
    static const char axes[3] = {'Z', 'X', 'Y'};
    std::vector<BasisSetting> settings;
    std::size_t total = 1;
    for (int q = 0; q < n_qubits; ++q) {
        total *= 3;
    }
    settings.reserve(total);
    for (std::size_t code = 0; code < total; ++code) {
        BasisSetting s(static_cast<std::size_t>(n_qubits), 'Z');
        std::size_t rest = code;
        for (int q = n_qubits - 1; q >= 0; --q) {
            s[static_cast<std::size_t>(q)] = axes[rest % 3];
            rest /= 3;
        }
        settings.push_back(std::move(s));
    }
    return settings;
}

inline void validate_setting(const BasisSetting& setting) {
    if (setting.empty()) {
        throw std::invalid_argument("basis setting: empty");
    }
    for (char c : setting) {
        if (c != 'X' && c != 'Y' && c != 'Z') {
            throw std::invalid_argument("basis setting: axes must be X, Y or Z");
        }
    }
}

/**
 * Pre-measurement rotation fragment for one setting, followed by a
 * computational-basis measurement of every qubit: nothing for Z, H for X,
 * S† then H for Y (maps the +y eigenstate to |0⟩).
 */
inline Circuit basis_rotation(const BasisSetting& setting) {
    validate_setting(setting);
    const int n = static_cast<int>(setting.size());
    Circuit c(n, n);
    for (int q = 0; q < n; ++q) {
        switch (setting[static_cast<std::size_t>(q)]) {
            case 'X': c.h(q); break;
            case 'Y':
                c.sdg(q);
                c.h(q);
                break;
            default: break;
        }
    }
    c.measure_all();
    return c;
}

/**
 * Counts (or exact probabilities) for one basis setting. shots == 0 marks an
 * exact-probability table; otherwise values are integer counts summing to
 * shots. `sds` optionally carries per-outcome standard deviations for
 * externally supplied probability tables.
 */
struct SettingData {
    std::map<std::string, double> values;
    long long shots = 0;
    std::map<std::string, double> sds;

    double frequency(const std::string& bits) const {
        const auto it = values.find(bits);
        if (it == values.end()) {
            return 0.0;
        }
        return shots > 0 ? it->second / static_cast<double>(shots)
                         : it->second;
    }
};

struct TomographyDataset {
    int n_qubits = 0;
    std::map<BasisSetting, SettingData> settings;

    json to_json() const {
        json arr = json::array();
        for (const auto& [axes, data] : settings) {
            json s{{"axes", axes}};
            if (data.shots > 0) {
                s["shots"] = data.shots;
                json counts = json::object();
                for (const auto& [bits, v] : data.values) {
                    counts[bits] = static_cast<long long>(v);
                }
                s["counts"] = std::move(counts);
            } else {
                json probs = json::object();
                for (const auto& [bits, v] : data.values) {
                    probs[bits] = v;
                }
                s["probs"] = std::move(probs);
            }
            if (!data.sds.empty()) {
                json sds = json::object();
                for (const auto& [bits, v] : data.sds) {
                    sds[bits] = v;
                }
                s["sds"] = std::move(sds);
            }
            arr.push_back(std::move(s));
        }
        return json{{"n", n_qubits}, {"settings", std::move(arr)}};
    }

    static TomographyDataset from_json(const json& j) {
        TomographyDataset ds;
        ds.n_qubits = j.at("n").get<int>();
        for (const json& s : j.at("settings")) {
            const BasisSetting axes = s.at("axes").get<std::string>();
            validate_setting(axes);
            if (static_cast<int>(axes.size()) != ds.n_qubits) {
                throw std::invalid_argument("dataset: axes length mismatch");
            }
            SettingData data;
            if (s.contains("counts")) {
                data.shots = s.at("shots").get<long long>();
                if (data.shots < 1) {
                    throw std::invalid_argument("dataset: shots must be >= 1");
                }
                double total = 0.0;
                for (const auto& [bits, v] : s.at("counts").items()) {
                    check_bitstring(bits, ds.n_qubits);
                    data.values[bits] = v.get<double>();
                    total += data.values[bits];
                }
                if (std::llround(total) != data.shots) {
                    throw std::invalid_argument(
                        "dataset: counts do not sum to shots");
                }
            } else {
                double total = 0.0;
                for (const auto& [bits, v] : s.at("probs").items()) {
                    check_bitstring(bits, ds.n_qubits);
                    data.values[bits] = v.get<double>();
                    total += data.values[bits];
                }
                // Hand-rounded published tables may miss 1 by a little.
                if (std::abs(total - 1.0) > 0.01) {
                    throw std::invalid_argument(
                        "dataset: probabilities must sum to 1 within 0.01");
                }
            }
            if (s.contains("sds")) {
                for (const auto& [bits, v] : s.at("sds").items()) {
                    data.sds[bits] = v.get<double>();
                }
            }
            ds.settings[axes] = std::move(data);
        }
        return ds;
    }

    static void check_bitstring(const std::string& bits, int n) {
        if (static_cast<int>(bits.size()) != n) {
            throw std::invalid_argument("dataset: bitstring length mismatch");
        }
        for (char c : bits) {
            if (c != '0' && c != '1') {
                throw std::invalid_argument("dataset: malformed bitstring");
            }
        }
    }
};

/// Exact-probability dataset (the infinite-shot limit) for a known state.
inline TomographyDataset exact_dataset(const StateVector& state) {
    TomographyDataset ds;
    ds.n_qubits = state.n_qubits;
    for (const BasisSetting& setting : tomography_settings(state.n_qubits)) {
        StateVector rotated = state;
        for (int q = 0; q < state.n_qubits; ++q) {
            switch (setting[static_cast<std::size_t>(q)]) {
                case 'X': apply_gate(rotated, gates::h(), {q}); break;
                case 'Y':
                    apply_gate(rotated, gates::sdg(), {q});
                    apply_gate(rotated, gates::h(), {q});
                    break;
                default: break;
            }
        }
        SettingData data;
        data.values = probabilities(rotated);
        ds.settings[setting] = std::move(data);
    }
    return ds;
}

/// Runs every setting of full tomography against a state-preparation
/// circuit. Settings are independent; each draws from its own substream.
inline TomographyDataset sampled_dataset(const Circuit& target,
                                         long long shots_per_setting,
                                         std::uint64_t seed,
                                         const NoiseModel* noise = nullptr) {
    if (shots_per_setting < 1) {
        throw std::invalid_argument("sampled_dataset: shots must be >= 1");
    }
    if (target.has_measurement()) {
        throw std::invalid_argument(
            "sampled_dataset: target must be measurement-free");
    }
    const std::vector<BasisSetting> settings =
        tomography_settings(target.n_qubits());
    TomographyDataset ds;
    ds.n_qubits = target.n_qubits();
    const Rng master(seed);
    for (std::size_t i = 0; i < settings.size(); ++i) {
        Circuit circ(target.n_qubits(), target.n_qubits());
        circ.extend(target);
        circ.extend(basis_rotation(settings[i]));
        SettingData data;
        data.shots = shots_per_setting;
        const Counts counts = sample_counts(
            circ, shots_per_setting, master.substream(i).seed(), noise);
        for (const auto& [bits, n] : counts) {
            data.values[bits] = static_cast<double>(n);
        }
        ds.settings[settings[i]] = std::move(data);
    }
    return ds;
}

/**
 * Pauli expectation coefficients, one per tensor-product string. Index
 * digits are base 4, qubit 0 most significant, 0=I 1=X 2=Y 3=Z. The
 * identity coefficient is pinned to exactly 1.
 */
struct StokesVector {
    int n_qubits = 0;
    std::vector<double> coeffs;

    std::size_t size() const { return coeffs.size(); }

    static std::string label_of(std::size_t index, int n_qubits) {
        static const char letters[4] = {'I', 'X', 'Y', 'Z'};
        std::string label(static_cast<std::size_t>(n_qubits), 'I');
        for (int q = n_qubits - 1; q >= 0; --q) {
            label[static_cast<std::size_t>(q)] = letters[index % 4];
            index /= 4;
        }
        return label;
    }
};

namespace detail {

/// Parity-weighted sum of frequencies: the expectation of a tensor product
/// of ±1 observables restricted to `mask_positions`.
inline double setting_expectation(const SettingData& data,
                                  const std::vector<int>& mask_positions) {
    double e = 0.0;
    for (const auto& [bits, value] : data.values) {
        int ones = 0;
        for (int pos : mask_positions) {
            if (bits[static_cast<std::size_t>(pos)] == '1') {
                ++ones;
            }
        }
        const double freq = data.shots > 0
                                ? value / static_cast<double>(data.shots)
                                : value;
        e += (ones & 1) ? -freq : freq;
    }
    return e;
}

} // namespace detail

/**
 * Estimates every Pauli-string expectation from a complete dataset. A string
 * with axes a_q at its non-identity positions is a marginal of every setting
 * agreeing with those axes; all 3^(n-weight) compatible settings are
 * averaged so no sample is wasted.
 */
inline StokesVector stokes_from_counts(const TomographyDataset& dataset) {
    const int n = dataset.n_qubits;
    const std::vector<BasisSetting> required = tomography_settings(n);
    for (const BasisSetting& s : required) {
        const auto it = dataset.settings.find(s);
        if (it == dataset.settings.end()) {
            throw std::invalid_argument("stokes_from_counts: missing setting " +
                                        s);
        }
        if (it->second.values.empty()) {
            throw std::invalid_argument(
                "stokes_from_counts: empty data for setting " + s);
        }
    }
    StokesVector stokes;
    stokes.n_qubits = n;
    stokes.coeffs.assign(std::size_t{1} << (2 * n), 0.0);
    for (std::size_t idx = 0; idx < stokes.coeffs.size(); ++idx) {
        const std::string label = StokesVector::label_of(idx, n);
        std::vector<int> positions;
        for (int q = 0; q < n; ++q) {
            if (label[static_cast<std::size_t>(q)] != 'I') {
                positions.push_back(q);
            }
        }
        if (positions.empty()) {
            stokes.coeffs[idx] = 1.0;
            continue;
        }
        double sum = 0.0;
        int matches = 0;
        for (const auto& [axes, data] : dataset.settings) {
            bool compatible = true;
            for (int q : positions) {
                if (axes[static_cast<std::size_t>(q)] !=
                    label[static_cast<std::size_t>(q)]) {
                    compatible = false;
                    break;
                }
            }
            if (compatible) {
                sum += detail::setting_expectation(data, positions);
                ++matches;
            }
        }
        stokes.coeffs[idx] = sum / matches;
    }
    return stokes;
}

/// Linear inversion: ρ = 2^{-n} Σ_P coeff(P) · P. Hermitian with unit trace
/// by construction; eigenvalues may dip below zero for finite-shot data.
inline DensityMatrix reconstruct_density(const StokesVector& stokes) {
    const int n = stokes.n_qubits;
    const Eigen::Index dim = Eigen::Index{1} << n;
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::size_t idx = 0; idx < stokes.coeffs.size(); ++idx) {
        const double coeff = stokes.coeffs[idx];
        if (coeff == 0.0) {
            continue;
        }
        const std::string label = StokesVector::label_of(idx, n);
        std::vector<std::array<cplx, 4>> factors;
        factors.reserve(static_cast<std::size_t>(n));
        for (int q = 0; q < n; ++q) {
            factors.push_back(
                pauli_matrix_2x2(label[static_cast<std::size_t>(q)]));
        }
        for (Eigen::Index r = 0; r < dim; ++r) {
            for (Eigen::Index c = 0; c < dim; ++c) {
                cplx entry = coeff;
                for (int q = 0; q < n; ++q) {
                    const int rb = static_cast<int>((r >> (n - 1 - q)) & 1);
                    const int cb = static_cast<int>((c >> (n - 1 - q)) & 1);
                    entry *= factors[static_cast<std::size_t>(q)]
                                    [static_cast<std::size_t>(rb * 2 + cb)];
                    if (entry == cplx(0.0)) {
                        break;
                    }
                }
                rho(r, c) += entry;
            }
        }
    }
    rho /= static_cast<double>(dim);
    return DensityMatrix(n, std::move(rho));
}

/**
 * Frobenius-nearest density matrix: keeps the eigenbasis and projects the
 * spectrum onto the probability simplex (uniform shift, clip at zero, with
 * the shift chosen so the kept eigenvalues sum to 1). Already-physical
 * input passes through unchanged up to numerical noise.
 */
inline DensityMatrix project_physical(const DensityMatrix& raw) {
    if (!raw.is_hermitian(1e-8)) {
        throw std::invalid_argument("project_physical: input not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(raw.mat);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("project_physical: eigensolver failed");
    }
    const Eigen::VectorXd evals = solver.eigenvalues();
    const Eigen::Index dim = evals.size();
    std::vector<double> sorted(evals.data(), evals.data() + dim);
    std::sort(sorted.begin(), sorted.end(), std::greater<double>());
    double prefix = 0.0;
    double shift = 0.0;
    for (Eigen::Index k = 0; k < dim; ++k) {
        prefix += sorted[static_cast<std::size_t>(k)];
        const double candidate =
            (prefix - 1.0) / static_cast<double>(k + 1);
        if (k + 1 == dim ||
            sorted[static_cast<std::size_t>(k + 1)] <= candidate) {
            shift = candidate;
            break;
        }
    }
    Eigen::VectorXd projected(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        projected[i] = std::max(evals[i] - shift, 0.0);
    }
    Eigen::MatrixXcd mat = solver.eigenvectors() * projected.asDiagonal() *
                           solver.eigenvectors().adjoint();
    return DensityMatrix(raw.n_qubits, std::move(mat));
}

struct TomographyReport {
    DensityMatrix rho;          // physical (projected) reconstruction
    double fidelity = 0.0;      // vs the ideal state of the target circuit
    double raw_min_eigenvalue = 0.0;  // flags linear-inversion negativity
    long long shots_per_setting = 0;  // 0 marks the exact-probability mode
};

/// Reconstruction, projection and fidelity against a reference state, for
/// a dataset from any source (sampled here or collected elsewhere).
inline TomographyReport analyse_dataset(const TomographyDataset& dataset,
                                        const StateVector& ideal,
                                        long long shots_per_setting = 0) {
    TomographyReport report;
    const DensityMatrix raw = reconstruct_density(stokes_from_counts(dataset));
    report.raw_min_eigenvalue = min_eigenvalue(raw);
    report.rho = project_physical(raw);
    report.fidelity = fidelity(density_from_state(ideal), report.rho);
    report.shots_per_setting = shots_per_setting;
    return report;
}

/// Full tomography of a preparation circuit at finite shots.
inline TomographyReport tomography_pipeline(const Circuit& target,
                                            long long shots_per_setting,
                                            std::uint64_t seed,
                                            const NoiseModel* noise = nullptr) {
    const TomographyDataset dataset =
        sampled_dataset(target, shots_per_setting, seed, noise);
    return analyse_dataset(dataset, ideal_state(target), shots_per_setting);
}

/// Infinite-shot limit: exact probabilities in place of counts.
inline TomographyReport tomography_pipeline_exact(const Circuit& target) {
    const StateVector ideal = ideal_state(target);
    return analyse_dataset(exact_dataset(ideal), ideal, 0);
}

} // namespace wstate
