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

#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "wstate/circuit.hpp"
#include "wstate/w_states.hpp"

using namespace wstate;
using Catch::Approx;

TEST_CASE("perfect W circuit prepares the target state", "[circuit]") {
    Circuit c = perfect_w_circuit();
    CHECK(c.ops().size() <= 10);

    StateVector state = ideal_state(c);
    auto probs = probabilities(state);
    CHECK(probs.at("100") == Approx(0.25).margin(1e-12));
    CHECK(probs.at("010") == Approx(0.25).margin(1e-12));
    CHECK(probs.at("001") == Approx(0.50).margin(1e-12));
    CHECK(expectation(state, PauliString("ZZZ")) ==
          Approx(-1.0).margin(1e-12));

    // Amplitudes are real non-negative in this gauge, so fidelity with the
    // direct-construction state is 1.
    DensityMatrix target = density_from_state(perfect_w_state());
    CHECK(fidelity(target, density_from_state(state)) >
          1.0 - 1e-9);
}

TEST_CASE("builders are pure functions", "[circuit]") {
    CHECK(perfect_w_circuit() == perfect_w_circuit());
    CHECK(message_prep_circuit() == message_prep_circuit());
    CHECK(perfect_w_circuit().to_json() == perfect_w_circuit().to_json());
}

TEST_CASE("general W family", "[circuit]") {
    StateVector eq4 = general_w_state(1.0, 0.0, 0.0);
    CHECK(eq4.amps[0b001].real() ==
          Approx(std::sqrt(2.0) / 2.0).epsilon(1e-12));
    CHECK(eq4.amps[0b010].real() == Approx(0.5).epsilon(1e-12));
    CHECK(eq4.amps[0b100].real() == Approx(0.5).epsilon(1e-12));

    StateVector degenerate = general_w_state(0.0, 0.0, 0.0);
    CHECK(degenerate.amps[0b100].real() ==
          Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(degenerate.amps[0b010]) == Approx(0.0).margin(1e-15));

    StateVector flipped = general_w_state(1.0, M_PI, 0.0);
    CHECK(flipped.amps[0b010].real() == Approx(-0.5).epsilon(1e-12));

    CHECK_THROWS_AS(general_w_state(-0.5, 0, 0), std::invalid_argument);

    // Normalisation holds across the family.
    std::mt19937_64 gen(4);
    std::uniform_real_distribution<double> s_dist(0.0, 5.0);
    std::uniform_real_distribution<double> phase(-M_PI, M_PI);
    for (int trial = 0; trial < 100; ++trial) {
        StateVector s = general_w_state(s_dist(gen), phase(gen), phase(gen));
        REQUIRE(std::abs(s.norm_sq() - 1.0) < 1e-12);
    }
}

TEST_CASE("maximal W state", "[circuit]") {
    StateVector two = maximal_w_state(2);
    CHECK(two.amps[0b10].real() == Approx(1.0 / std::sqrt(2.0)));
    CHECK(two.amps[0b01].real() == Approx(1.0 / std::sqrt(2.0)));

    auto probs = probabilities(maximal_w_state(3));
    CHECK(probs.size() == 3);

    // <Z> on any single qubit of the n=4 state is 1 - 2/4, checked against
    // the dense oracle as well.
    StateVector four = maximal_w_state(4);
    for (int q = 0; q < 4; ++q) {
        std::string labels = "IIII";
        labels[static_cast<std::size_t>(q)] = 'Z';
        CHECK(expectation(four, PauliString(labels)) ==
              Approx(0.5).margin(1e-12));
        CHECK(oracle::pauli_expectation(four.amps, labels) ==
              Approx(0.5).margin(1e-12));
    }

    CHECK_THROWS_AS(maximal_w_state(1), std::invalid_argument);
}

TEST_CASE("message preparation matches the reference density matrix",
          "[circuit]") {
    StateVector msg = ideal_state(message_prep_circuit());
    CHECK(std::abs(msg.norm_sq() - 1.0) < 1e-12);
    DensityMatrix rho = density_from_state(msg);
    CHECK(rho.mat(0, 0).real() == Approx(0.194).margin(5e-3));
    CHECK(rho.mat(1, 1).real() == Approx(0.806).margin(5e-3));
    CHECK(rho.mat(0, 1).real() == Approx(0.250).margin(5e-3));
    CHECK(rho.mat(0, 1).imag() == Approx(-0.306).margin(5e-3));
}

TEST_CASE("run executes measurements and conditions", "[circuit]") {
    // Measured perfect W yields a weight-one bitstring.
    Circuit c(3, 3);
    c.extend(perfect_w_circuit());
    c.measure_all();
    ExecutionResult r = run(c, 17);
    int ones = r.clbits[0] + r.clbits[1] + r.clbits[2];
    CHECK(ones == 1);

    // Empty circuit leaves |0...0>.
    Circuit empty(2, 0);
    CHECK(probabilities(run(empty, 1).state).at("00") == Approx(1.0));

    // X conditioned on an unset clbit is a no-op.
    Circuit cond(1, 1);
    cond.x(0, Condition{0, 1});
    CHECK(probabilities(run(cond, 1).state).at("0") == Approx(1.0));

    // And fires when the condition holds.
    Circuit cond2(2, 1);
    cond2.x(0);
    cond2.measure(0, 0);
    cond2.x(1, Condition{0, 1});
    CHECK(probabilities(run(cond2, 1).state).at("11") == Approx(1.0));
}

TEST_CASE("reset returns a qubit to |0>", "[circuit]") {
    Circuit c(1, 1);
    c.h(0);
    c.reset(0);
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        CHECK(probabilities(run(c, seed).state).at("0") == Approx(1.0));
    }
}

TEST_CASE("circuit JSON round trip", "[circuit]") {
    Circuit c(3, 2);
    c.h(0);
    c.u3(1, 0.3, -0.2, 1.7);
    c.custom2q(controlled(u3_matrix(0.4, 0.1, 0.0)), 2, 0);
    c.cnot(0, 1);
    c.measure(0, 0);
    c.x(2, Condition{0, 1});
    c.reset(1);

    Circuit back = Circuit::from_json(c.to_json());
    CHECK(back == c);
    CHECK(back.to_json() == c.to_json());
}

TEST_CASE("circuit validation rejects malformed input", "[circuit]") {
    Circuit c(2, 1);
    CHECK_THROWS_AS(c.gate("hadamard", {0}), std::invalid_argument);
    CHECK_THROWS_AS(c.x(2), std::out_of_range);
    CHECK_THROWS_AS(c.cnot(0, 0), std::invalid_argument);
    CHECK_THROWS_AS(c.measure(0, 3), std::out_of_range);
    CHECK_THROWS_AS(c.gate("u3", {0}, {0.1}), std::invalid_argument);

    json bad = json{{"n_qubits", 1}, {"n_clbits", 0},
                    {"ops", json::array({json{{"kind", "warp"},
                                              {"targets", {0}}}})}};
    CHECK_THROWS_AS(Circuit::from_json(bad), std::invalid_argument);
}

TEST_CASE("remap embeds a builder into a larger register", "[circuit]") {
    Circuit moved = remap_qubits(perfect_w_circuit(), {3, 2, 1}, 4, 2);
    StateVector state = ideal_state(moved);
    auto probs = probabilities(state);
    // The heavy outcome moves to q1 of the 4-qubit register.
    CHECK(probs.at("0100") == Approx(0.50).margin(1e-12));
    CHECK(probs.at("0010") == Approx(0.25).margin(1e-12));
    CHECK(probs.at("0001") == Approx(0.25).margin(1e-12));
}
