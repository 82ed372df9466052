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

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "wstate/gates.hpp"
#include "wstate/json_io.hpp"
#include "wstate/noise.hpp"
#include "wstate/rng.hpp"
#include "wstate/statevector.hpp"

namespace wstate {

/// Single-bit classical predicate: run the operation iff clbit == value.
/// Multi-bit conditions are expressed as several conditioned operations.
struct Condition {
    int clbit = 0;
    int value = 1;

    bool operator==(const Condition&) const = default;
};

struct Operation {
    enum class Kind { Gate, Measure, Reset };

    Kind kind = Kind::Gate;
    std::string name;                  // named gate, or "custom2q"
    std::vector<int> targets;          // qubit indices
    std::vector<int> clbits;           // measurement destinations
    std::vector<double> params;        // u3 angles
    std::optional<GateMatrix> matrix;  // payload for custom2q
    std::optional<Condition> condition;

    bool operator==(const Operation& other) const {
        return kind == other.kind && name == other.name &&
               targets == other.targets && clbits == other.clbits &&
               params == other.params && matrix == other.matrix &&
               condition == other.condition;
    }
};

/// Named gates accepted by the IR; anything else must be a custom2q payload.
inline const std::set<std::string>& allowed_gate_names() {
    static const std::set<std::string> names = {
        "x", "y", "z", "h", "s", "sdg", "t", "tdg", "u3", "cnot", "cz",
        "custom2q"};
    return names;
}

/**
 * @brief Ordered list of gate/measure/reset operations over n qubits and m
 * classical bits. Circuits are immutable once built (builders return by
 * value); execution never mutates the circuit.
 */
class Circuit {
  public:
    Circuit() = default;
    Circuit(int n_qubits, int n_clbits)
        : n_qubits_(n_qubits), n_clbits_(n_clbits) {
        if (n_qubits < 1 || n_qubits > kMaxQubits || n_clbits < 0) {
            throw std::invalid_argument("Circuit: bad register sizes");
        }
    }

    int n_qubits() const { return n_qubits_; }
    int n_clbits() const { return n_clbits_; }
    const std::vector<Operation>& ops() const { return ops_; }

    void append(Operation op) {
        validate_op(op);
        ops_.push_back(std::move(op));
    }

    // -- gate sugar -------------------------------------------------------

    void gate(const std::string& name, std::vector<int> targets,
              std::vector<double> params = {},
              std::optional<Condition> cond = std::nullopt) {
        Operation op;
        op.kind = Operation::Kind::Gate;
        op.name = name;
        op.targets = std::move(targets);
        op.params = std::move(params);
        op.condition = cond;
        append(std::move(op));
    }

    void x(int q, std::optional<Condition> cond = std::nullopt) {
        gate("x", {q}, {}, cond);
    }
    void y(int q) { gate("y", {q}); }
    void z(int q, std::optional<Condition> cond = std::nullopt) {
        gate("z", {q}, {}, cond);
    }
    void h(int q) { gate("h", {q}); }
    void s(int q) { gate("s", {q}); }
    void sdg(int q) { gate("sdg", {q}); }
    void t(int q) { gate("t", {q}); }
    void tdg(int q) { gate("tdg", {q}); }
    void u3(int q, double theta, double phi, double lambda) {
        gate("u3", {q}, {theta, phi, lambda});
    }
    void cnot(int control, int target) { gate("cnot", {control, target}); }
    void cz(int a, int b) { gate("cz", {a, b}); }

    void custom2q(const GateMatrix& m, int a, int b,
                  std::optional<Condition> cond = std::nullopt) {
        Operation op;
        op.kind = Operation::Kind::Gate;
        op.name = "custom2q";
        op.targets = {a, b};
        op.matrix = m;
        op.condition = cond;
        append(std::move(op));
    }

    void measure(int qubit, int clbit) {
        Operation op;
        op.kind = Operation::Kind::Measure;
        op.targets = {qubit};
        op.clbits = {clbit};
        append(std::move(op));
    }

    void measure_all() {
        for (int q = 0; q < n_qubits_; ++q) {
            measure(q, q);
        }
    }

    void reset(int qubit) {
        Operation op;
        op.kind = Operation::Kind::Reset;
        op.targets = {qubit};
        append(std::move(op));
    }

    /// Appends every operation of `other` (same register sizes or smaller).
    void extend(const Circuit& other) {
        if (other.n_qubits() > n_qubits_ || other.n_clbits() > n_clbits_) {
            throw std::invalid_argument("extend: register overflow");
        }
        for (const Operation& op : other.ops_) {
            append(op);
        }
    }

    bool has_measurement() const {
        for (const Operation& op : ops_) {
            if (op.kind == Operation::Kind::Measure) {
                return true;
            }
        }
        return false;
    }

    /// True when the circuit is plain unitary evolution followed by (only)
    /// measurements: no reset, no condition, and no gate after a measure.
    /// Such circuits admit sampling from a single final state.
    bool is_terminal_measure_only() const {
        bool seen_measure = false;
        for (const Operation& op : ops_) {
            if (op.kind == Operation::Kind::Reset || op.condition) {
                return false;
            }
            if (op.kind == Operation::Kind::Measure) {
                seen_measure = true;
            } else if (seen_measure) {
                return false;
            }
        }
        return true;
    }

    bool operator==(const Circuit& other) const {
        return n_qubits_ == other.n_qubits_ && n_clbits_ == other.n_clbits_ &&
               ops_ == other.ops_;
    }

    // -- serialisation ----------------------------------------------------

    json to_json() const {
        json ops = json::array();
        for (const Operation& op : ops_) {
            json o;
            switch (op.kind) {
                case Operation::Kind::Gate: o["kind"] = "gate"; break;
                case Operation::Kind::Measure: o["kind"] = "measure"; break;
                case Operation::Kind::Reset: o["kind"] = "reset"; break;
            }
            if (!op.name.empty()) {
                o["name"] = op.name;
            }
            o["targets"] = op.targets;
            if (!op.clbits.empty()) {
                o["clbits"] = op.clbits;
            }
            if (!op.params.empty()) {
                o["params"] = op.params;
            }
            if (op.matrix) {
                json m = json::array();
                for (int r = 0; r < op.matrix->dim(); ++r) {
                    json row = json::array();
                    for (int c = 0; c < op.matrix->dim(); ++c) {
                        row.push_back(complex_to_json(op.matrix->at(r, c)));
                    }
                    m.push_back(std::move(row));
                }
                o["matrix"] = std::move(m);
            }
            if (op.condition) {
                o["cond"] = {{"clbit", op.condition->clbit},
                             {"value", op.condition->value}};
            }
            ops.push_back(std::move(o));
        }
        return json{{"n_qubits", n_qubits_},
                    {"n_clbits", n_clbits_},
                    {"ops", std::move(ops)}};
    }

    static Circuit from_json(const json& j) {
        Circuit c(j.at("n_qubits").get<int>(), j.at("n_clbits").get<int>());
        for (const json& o : j.at("ops")) {
            Operation op;
            const std::string kind = o.at("kind").get<std::string>();
            if (kind == "gate") {
                op.kind = Operation::Kind::Gate;
            } else if (kind == "measure") {
                op.kind = Operation::Kind::Measure;
            } else if (kind == "reset") {
                op.kind = Operation::Kind::Reset;
            } else {
                throw std::invalid_argument("circuit json: bad op kind");
            }
            op.name = o.value("name", std::string{});
            op.targets = o.at("targets").get<std::vector<int>>();
            if (o.contains("clbits")) {
                op.clbits = o.at("clbits").get<std::vector<int>>();
            }
            if (o.contains("params")) {
                op.params = o.at("params").get<std::vector<double>>();
            }
            if (o.contains("matrix")) {
                const json& m = o.at("matrix");
                if (m.size() != 4) {
                    throw std::invalid_argument(
                        "circuit json: custom matrix must be 4x4");
                }
                std::array<cplx, 16> entries{};
                for (int r = 0; r < 4; ++r) {
                    for (int col = 0; col < 4; ++col) {
                        entries[static_cast<std::size_t>(r * 4 + col)] =
                            complex_from_json(m[r][col]);
                    }
                }
                op.matrix = GateMatrix::two_qubit(entries);
            }
            if (o.contains("cond")) {
                op.condition = Condition{o["cond"].at("clbit").get<int>(),
                                         o["cond"].at("value").get<int>()};
            }
            c.append(std::move(op));
        }
        return c;
    }

  private:
    void validate_op(const Operation& op) const {
        for (int q : op.targets) {
            if (q < 0 || q >= n_qubits_) {
                throw std::out_of_range("Circuit: qubit index out of range");
            }
        }
        for (int b : op.clbits) {
            if (b < 0 || b >= n_clbits_) {
                throw std::out_of_range("Circuit: clbit index out of range");
            }
        }
        if (op.condition &&
            (op.condition->clbit < 0 || op.condition->clbit >= n_clbits_)) {
            throw std::out_of_range("Circuit: condition clbit out of range");
        }
        switch (op.kind) {
            case Operation::Kind::Gate: {
                if (!allowed_gate_names().count(op.name)) {
                    throw std::invalid_argument("Circuit: unknown gate '" +
                                                op.name + "'");
                }
                if (op.name == "custom2q") {
                    if (!op.matrix || op.matrix->dim() != 4 ||
                        op.targets.size() != 2) {
                        throw std::invalid_argument(
                            "Circuit: custom2q needs a 4x4 matrix and two "
                            "targets");
                    }
                } else {
                    const bool two = op.name == "cnot" || op.name == "cz";
                    if (op.targets.size() != (two ? 2u : 1u)) {
                        throw std::invalid_argument(
                            "Circuit: wrong target count for " + op.name);
                    }
                    if (op.name == "u3" && op.params.size() != 3) {
                        throw std::invalid_argument(
                            "Circuit: u3 needs three angles");
                    }
                }
                if (op.targets.size() == 2 &&
                    op.targets[0] == op.targets[1]) {
                    throw std::invalid_argument(
                        "Circuit: duplicate gate target");
                }
                break;
            }
            case Operation::Kind::Measure: {
                if (op.targets.size() != op.clbits.size() ||
                    op.targets.empty()) {
                    throw std::invalid_argument(
                        "Circuit: measure needs matching qubit/clbit lists");
                }
                std::set<int> qs(op.targets.begin(), op.targets.end());
                std::set<int> bs(op.clbits.begin(), op.clbits.end());
                if (qs.size() != op.targets.size() ||
                    bs.size() != op.clbits.size()) {
                    throw std::invalid_argument(
                        "Circuit: duplicate measurement target");
                }
                break;
            }
            case Operation::Kind::Reset: {
                if (op.targets.size() != 1) {
                    throw std::invalid_argument(
                        "Circuit: reset takes one qubit");
                }
                break;
            }
        }
    }

    int n_qubits_ = 1;
    int n_clbits_ = 0;
    std::vector<Operation> ops_;
};

/// Rebuilds a circuit with qubit q replaced by mapping[q]; register size is
/// the target circuit's. Used to embed builders into larger registers.
inline Circuit remap_qubits(const Circuit& c, const std::vector<int>& mapping,
                            int new_n_qubits, int new_n_clbits) {
    if (static_cast<int>(mapping.size()) != c.n_qubits()) {
        throw std::invalid_argument("remap_qubits: mapping size mismatch");
    }
    Circuit out(new_n_qubits, new_n_clbits);
    for (Operation op : c.ops()) {
        for (int& q : op.targets) {
            q = mapping.at(static_cast<std::size_t>(q));
        }
        out.append(std::move(op));
    }
    return out;
}

struct ExecutionResult {
    StateVector state;
    std::vector<int> clbits;
    // Product of measured-branch probabilities when outcomes were forced;
    // 1.0 for ordinary sampled execution.
    double branch_probability = 1.0;
};

namespace detail {

inline void insert_pauli_noise(StateVector& state,
                               const std::vector<int>& touched, double p,
                               Rng& rng) {
    if (p <= 0.0) {
        return;
    }
    for (int q : touched) {
        if (rng.uniform() < p) {
            switch (rng.below(3)) {
                case 0: apply_gate(state, gates::x(), {q}); break;
                case 1: apply_gate(state, gates::y(), {q}); break;
                default: apply_gate(state, gates::z(), {q}); break;
            }
        }
    }
}

} // namespace detail

/**
 * Executes a circuit: gates in order, measurements collapsing the state and
 * writing clbits, conditions consulted at execution time. With a noise
 * model, each touched qubit picks up a random Pauli after every gate and
 * recorded bits may flip at readout. `forced_clbits` post-selects the given
 * measurement outcomes (clbit -> bit) instead of sampling them; forced
 * readout is exact, bypassing readout error.
 */
inline ExecutionResult execute(const Circuit& circuit, Rng& rng,
                               const NoiseModel* noise = nullptr,
                               const std::map<int, int>* forced_clbits =
                                   nullptr) {
    const bool noisy = noise != nullptr && !noise->is_zero();
    ExecutionResult result;
    result.state = zero_state(circuit.n_qubits());
    result.clbits.assign(static_cast<std::size_t>(circuit.n_clbits()), 0);
    for (const Operation& op : circuit.ops()) {
        if (op.condition &&
            result.clbits[static_cast<std::size_t>(op.condition->clbit)] !=
                op.condition->value) {
            continue;
        }
        switch (op.kind) {
            case Operation::Kind::Gate: {
                if (op.name == "custom2q") {
                    apply_gate(result.state, *op.matrix, op.targets);
                } else {
                    std::array<double, 3> params{};
                    for (std::size_t i = 0; i < op.params.size() && i < 3;
                         ++i) {
                        params[i] = op.params[i];
                    }
                    apply_gate(result.state, named_gate(op.name, params),
                               op.targets);
                }
                if (noisy) {
                    const double p =
                        op.targets.size() == 2 ? noise->p2 : noise->p1;
                    detail::insert_pauli_noise(result.state, op.targets, p,
                                               rng);
                }
                break;
            }
            case Operation::Kind::Measure: {
                for (std::size_t i = 0; i < op.targets.size(); ++i) {
                    const int q = op.targets[i];
                    const int clbit = op.clbits[i];
                    int outcome;
                    if (forced_clbits && forced_clbits->count(clbit)) {
                        outcome = forced_clbits->at(clbit);
                        result.branch_probability *=
                            project_qubit(result.state, q, outcome);
                        result.clbits[static_cast<std::size_t>(clbit)] =
                            outcome;
                    } else {
                        outcome = measure_qubit(result.state, q, rng);
                        result.clbits[static_cast<std::size_t>(clbit)] =
                            noisy ? noise->flip_readout(outcome, rng)
                                  : outcome;
                    }
                }
                break;
            }
            case Operation::Kind::Reset: {
                const int q = op.targets[0];
                if (measure_qubit(result.state, q, rng) == 1) {
                    apply_gate(result.state, gates::x(), {q});
                }
                break;
            }
        }
    }
    return result;
}

/// Noiseless execution from a bare seed.
inline ExecutionResult run(const Circuit& circuit, std::uint64_t seed) {
    Rng rng(seed);
    return execute(circuit, rng);
}

/// Final state of a measurement-free circuit (throws otherwise); the
/// reference path for tomography targets and fidelity baselines.
inline StateVector ideal_state(const Circuit& circuit) {
    if (circuit.has_measurement()) {
        throw std::invalid_argument(
            "ideal_state: circuit contains measurements");
    }
    Rng rng(0);
    return execute(circuit, rng).state;
}

} // namespace wstate
