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
#include "wstate/sampling.hpp"
#include "wstate/statevector.hpp"
#include "wstate/w_states.hpp"

using namespace wstate;
using Catch::Approx;

TEST_CASE("zero_state basics", "[statevec]") {
    StateVector s1 = zero_state(1);
    REQUIRE(s1.amps.size() == 2);
    CHECK(s1.amps[0] == cplx(1.0));
    CHECK(s1.amps[1] == cplx(0.0));

    StateVector s3 = zero_state(3);
    REQUIRE(s3.amps.size() == 8);
    CHECK(s3.amps[0] == cplx(1.0));
    CHECK(probabilities(s3).at("000") == Approx(1.0));

    CHECK_THROWS_AS(zero_state(0), std::invalid_argument);
    CHECK_THROWS_AS(zero_state(25), std::invalid_argument);
}

TEST_CASE("u3 matrix convention", "[statevec]") {
    // (0,0,0) is the identity.
    GateMatrix id = u3_matrix(0, 0, 0);
    CHECK(id.at(0, 0) == cplx(1.0));
    CHECK(std::abs(id.at(0, 1)) == Approx(0.0).margin(1e-15));

    // (pi,0,pi) is Pauli X up to global phase: compare |entries|.
    GateMatrix px = u3_matrix(M_PI, 0, M_PI);
    CHECK(std::abs(px.at(0, 1)) == Approx(1.0).margin(1e-12));
    CHECK(std::abs(px.at(1, 0)) == Approx(1.0).margin(1e-12));
    CHECK(std::abs(px.at(0, 0)) == Approx(0.0).margin(1e-12));

    // (pi/3,0,0) on |0> -> (cos(pi/6), sin(pi/6)), evaluated from the
    // formula directly.
    StateVector s = zero_state(1);
    apply_gate(s, u3_matrix(M_PI / 3, 0, 0), {0});
    CHECK(s.amps[0].real() == Approx(std::cos(M_PI / 6)).epsilon(1e-12));
    CHECK(s.amps[1].real() == Approx(std::sin(M_PI / 6)).epsilon(1e-12));

    CHECK_THROWS_AS(u3_matrix(std::nan(""), 0, 0), std::invalid_argument);
}

TEST_CASE("gate constructors reject non-unitary input", "[statevec]") {
    CHECK_THROWS_AS(GateMatrix::one_qubit(1, 0, 0, 2), std::invalid_argument);
    CHECK_THROWS_AS(GateMatrix::one_qubit(1, 1, 1, 1), std::invalid_argument);
    // Every named gate satisfies U†U = I to 1e-10 by construction; spot
    // check one product explicitly.
    GateMatrix h = gates::h();
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
            cplx dot = 0;
            for (int k = 0; k < 2; ++k) {
                dot += std::conj(h.at(k, i)) * h.at(k, j);
            }
            CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) < 1e-10);
        }
    }
}

TEST_CASE("apply_gate moves amplitudes where expected", "[statevec]") {
    StateVector s = zero_state(3);
    apply_gate(s, gates::x(), {2});
    CHECK(probabilities(s).at("001") == Approx(1.0));

    StateVector q = zero_state(1);
    apply_gate(q, gates::h(), {0});
    apply_gate(q, gates::h(), {0});
    CHECK(std::abs(q.amps[0] - cplx(1.0)) < 1e-12);

    // CNOT(q0->q1) on (|00>+|10>)/sqrt2 gives the Bell pair.
    StateVector b = zero_state(2);
    apply_gate(b, gates::h(), {0});
    apply_gate(b, gates::cnot(), {0, 1});
    CHECK(probabilities(b).at("00") == Approx(0.5).margin(1e-12));
    CHECK(probabilities(b).at("11") == Approx(0.5).margin(1e-12));

    CHECK_THROWS_AS(apply_gate(s, gates::x(), {3}), std::out_of_range);
    CHECK_THROWS_AS(apply_gate(s, gates::cnot(), {0}), std::invalid_argument);
    CHECK_THROWS_AS(apply_gate(s, gates::cnot(), {1, 1}),
                    std::invalid_argument);
}

TEST_CASE("norm preserved across random gate sequences", "[statevec]") {
    std::mt19937_64 gen(31);
    std::uniform_real_distribution<double> angle(-M_PI, M_PI);
    std::uniform_int_distribution<int> pick_q(0, 2);
    StateVector s = zero_state(3);
    for (int step = 0; step < 200; ++step) {
        if (step % 3 == 2) {
            int a = pick_q(gen), b = pick_q(gen);
            if (a == b) {
                b = (b + 1) % 3;
            }
            apply_gate(s, gates::cnot(), {a, b});
        } else {
            apply_gate(s, u3_matrix(angle(gen), angle(gen), angle(gen)),
                       {pick_q(gen)});
        }
        REQUIRE(std::abs(s.norm_sq() - 1.0) < 1e-9);
    }
}

TEST_CASE("probabilities of the W-state family", "[statevec]") {
    auto probs = probabilities(perfect_w_state());
    REQUIRE(probs.size() == 3);
    CHECK(probs.at("100") == Approx(0.25).margin(1e-12));
    CHECK(probs.at("010") == Approx(0.25).margin(1e-12));
    CHECK(probs.at("001") == Approx(0.50).margin(1e-12));

    auto maximal = probabilities(maximal_w_state(3));
    for (const auto& key : {"100", "010", "001"}) {
        CHECK(maximal.at(key) == Approx(1.0 / 3.0).margin(1e-12));
    }

    double total = 0;
    for (const auto& [bits, p] : probs) {
        total += p;
    }
    CHECK(total == Approx(1.0).margin(1e-10));
}

TEST_CASE("measure_qubit collapses and matches marginals", "[statevec]") {
    Rng rng(5);
    for (int trial = 0; trial < 16; ++trial) {
        StateVector s = zero_state(3);
        CHECK(measure_qubit(s, 0, rng) == 0);
        CHECK(probabilities(s).at("000") == Approx(1.0));
    }

    // (|0>+|1>)/sqrt2 collapsed onto outcome 1 leaves |1>.
    StateVector plus = zero_state(1);
    apply_gate(plus, gates::h(), {0});
    project_qubit(plus, 0, 1);
    CHECK(std::abs(plus.amps[1]) == Approx(1.0).margin(1e-12));
    CHECK(std::abs(plus.amps[0]) == Approx(0.0).margin(1e-12));

    CHECK_THROWS_AS(measure_qubit(plus, 4, rng), std::out_of_range);
}

TEST_CASE("measurement statistics agree with probabilities()", "[statevec]") {
    // >= 1e5 seeded trials of q2 on the perfect W; marginal is 0.5.
    const int trials = 100000;
    Rng master(99);
    long long ones = 0;
    for (int t = 0; t < trials; ++t) {
        Rng rng = master.substream(static_cast<std::uint64_t>(t));
        StateVector s = perfect_w_state();
        ones += measure_qubit(s, 2, rng);
    }
    const double freq = static_cast<double>(ones) / trials;
    const double sigma = std::sqrt(0.25 / trials);
    CHECK(std::abs(freq - 0.5) < 4 * sigma);
}

TEST_CASE("expectation matches the dense oracle", "[statevec]") {
    StateVector w = perfect_w_state();
    CHECK(expectation(w, PauliString("ZZZ")) == Approx(-1.0).margin(1e-12));
    CHECK(expectation(w, PauliString("III")) == Approx(1.0).margin(1e-12));
    CHECK(expectation(w, PauliString("ZXX")) ==
          Approx(std::sqrt(2.0) / 2.0).margin(1e-12));

    // Every 3-qubit Pauli string on 20 random states, against the dense
    // matrix-vector oracle.
    std::mt19937_64 gen(123);
    static const char letters[4] = {'I', 'X', 'Y', 'Z'};
    for (int trial = 0; trial < 20; ++trial) {
        const oracle::Vector amps = oracle::random_state(gen, 3);
        StateVector s = state_from_amplitudes(3, amps);
        for (int code = 0; code < 64; ++code) {
            std::string labels = {letters[code / 16], letters[(code / 4) % 4],
                                  letters[code % 4]};
            const double fast = expectation(s, PauliString(labels));
            const double dense = oracle::pauli_expectation(amps, labels);
            REQUIRE(std::abs(fast - dense) < 1e-10);
            REQUIRE(fast >= -1.0 - 1e-10);
            REQUIRE(fast <= 1.0 + 1e-10);
        }
    }

    CHECK_THROWS_AS(expectation(w, PauliString("ZZ")), std::invalid_argument);
}

TEST_CASE("partial trace basics", "[statevec]") {
    DensityMatrix pure0 = partial_trace(zero_state(2), {0});
    CHECK(pure0.mat(0, 0).real() == Approx(1.0));
    CHECK(std::abs(pure0.mat(1, 1)) == Approx(0.0).margin(1e-12));

    StateVector bell = zero_state(2);
    apply_gate(bell, gates::h(), {0});
    apply_gate(bell, gates::cnot(), {0, 1});
    DensityMatrix mixed = partial_trace(bell, {0});
    CHECK(mixed.mat(0, 0).real() == Approx(0.5).margin(1e-12));
    CHECK(mixed.mat(1, 1).real() == Approx(0.5).margin(1e-12));
    CHECK(std::abs(mixed.mat(0, 1)) == Approx(0.0).margin(1e-12));

    CHECK_THROWS_AS(partial_trace(bell, {}), std::invalid_argument);
    CHECK_THROWS_AS(partial_trace(bell, {5}), std::out_of_range);

    // Density-matrix input route agrees with the state route.
    DensityMatrix via_rho = partial_trace(density_from_state(bell), {0});
    CHECK((via_rho.mat - mixed.mat).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("partial trace of product states stays pure", "[statevec]") {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 25; ++trial) {
        StateVector s =
            state_from_amplitudes(3, oracle::random_product_state(gen));
        DensityMatrix reduced = partial_trace(s, {1});
        CHECK(hermitian_eigenvalues(reduced).maxCoeff() ==
              Approx(1.0).margin(1e-9));
    }
}

TEST_CASE("fidelity properties", "[statevec]") {
    DensityMatrix w = density_from_state(perfect_w_state());
    CHECK(fidelity(w, w) == Approx(1.0).margin(1e-9));

    DensityMatrix zero = density_from_state(zero_state(1));
    StateVector one = zero_state(1);
    apply_gate(one, gates::x(), {0});
    CHECK(fidelity(zero, density_from_state(one)) ==
          Approx(0.0).margin(1e-12));

    // Symmetry and the pure cross-check on random pairs.
    std::mt19937_64 gen(77);
    for (int trial = 0; trial < 10; ++trial) {
        StateVector a = state_from_amplitudes(2, oracle::random_state(gen, 2));
        StateVector b = state_from_amplitudes(2, oracle::random_state(gen, 2));
        DensityMatrix ra = density_from_state(a);
        DensityMatrix rb = partial_trace(
            state_from_amplitudes(3, oracle::random_state(gen, 3)), {0, 1});
        CHECK(std::abs(fidelity(ra, rb) - fidelity(rb, ra)) < 1e-9);
        CHECK(std::abs(fidelity(ra, rb) - pure_overlap_fidelity(ra, rb)) <
              1e-9);
        CHECK(fidelity(ra, rb) >= 0.0);
        CHECK(fidelity(ra, rb) <= 1.0 + 1e-9);
        (void)b;
    }

    DensityMatrix small(1, Eigen::MatrixXcd::Identity(2, 2) * 0.5);
    CHECK_THROWS_AS(fidelity(w, small), std::invalid_argument);
    Eigen::MatrixXcd bad(2, 2);
    bad << 0.5, cplx(0.3, 0.1), cplx(0.3, 0.3), 0.5;
    CHECK_THROWS_AS(fidelity(DensityMatrix(1, bad), small),
                    std::invalid_argument);
}

TEST_CASE("sample_counts is deterministic and well-formed", "[statevec]") {
    StateVector w = perfect_w_state();
    Counts a = sample_counts(w, 4096, 123);
    Counts b = sample_counts(w, 4096, 123);
    CHECK(a == b);

    long long total = 0;
    for (const auto& [bits, n] : a) {
        total += n;
        CHECK(bits.size() == 3);
    }
    CHECK(total == 4096);

    Counts zeros = sample_counts(zero_state(3), 1000, 9);
    CHECK(zeros.at("000") == 1000);

    CHECK_THROWS_AS(sample_counts(w, 0, 1), std::invalid_argument);
}

TEST_CASE("sampled frequencies track Born probabilities", "[statevec]") {
    const long long shots = 8192;
    Counts counts = sample_counts(perfect_w_state(), shots, 2026);
    const double p001 = static_cast<double>(counts["001"]) / shots;
    const double sigma = std::sqrt(0.25 / shots);
    CHECK(std::abs(p001 - 0.5) < 3 * sigma);
}
