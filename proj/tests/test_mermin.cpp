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
#include "wstate/json_io.hpp"
#include "wstate/mermin.hpp"
#include "wstate/w_states.hpp"

using namespace wstate;
using Catch::Approx;

#ifndef WSTATE_DATA_DIR
#define WSTATE_DATA_DIR "data"
#endif

TEST_CASE("expectation from counts follows the parity rule", "[mermin]") {
    CHECK(expectation_from_counts({{"000", 1.0}}) == Approx(1.0));

    std::map<std::string, double> uniform;
    for (int b = 0; b < 8; ++b) {
        std::string bits = {char('0' + ((b >> 2) & 1)),
                            char('0' + ((b >> 1) & 1)), char('0' + (b & 1))};
        uniform[bits] = 0.125;
    }
    CHECK(expectation_from_counts(uniform) == Approx(0.0).margin(1e-12));

    CHECK_THROWS_AS(expectation_from_counts({{"00", 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(expectation_from_counts({{"0a0", 1.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(expectation_from_counts(std::map<std::string, double>{}),
                    std::invalid_argument);
}

TEST_CASE("published table reproduces the reported expectations", "[mermin]") {
    TomographyDataset table = TomographyDataset::from_json(
        load_json_file(std::string(WSTATE_DATA_DIR) +
                       "/ibmq_vigo/mermin_table.json"));
    const auto& abc = table.settings.at("ZZZ");
    // Parity rule over the printed ABC probabilities.
    CHECK(expectation_from_counts(abc.values) == Approx(-0.874).margin(1e-3));

    MerminAnalysis analysis = mermin_from_dataset(table);
    CHECK(analysis.value == Approx(2.516).margin(0.01));
    CHECK(analysis.violates_classical_bound());
    CHECK(analysis.sd > 0.0);
    CHECK(analysis.sd < 0.1);
}

TEST_CASE("mermin_value arithmetic and validation", "[mermin]") {
    CHECK(mermin_value(1, 1, 1, 1) == Approx(2.0));
    CHECK_THROWS_AS(mermin_value(1.5, 0, 0, 0), std::invalid_argument);

    // Exact expectations of the perfect W under the Z/X settings, from the
    // dense oracle, feed the polynomial.
    StateVector w = perfect_w_state();
    const double e_abc = oracle::pauli_expectation(w.amps, "ZZZ");
    const double e_abpcp = oracle::pauli_expectation(w.amps, "ZXX");
    const double e_apbpc = oracle::pauli_expectation(w.amps, "XXZ");
    const double e_apbcp = oracle::pauli_expectation(w.amps, "XZX");
    CHECK(e_abc == Approx(-1.0).margin(1e-12));
    const double m = mermin_value(e_abc, e_abpcp, e_apbpc, e_apbcp);
    CHECK(m == Approx(1.0 + std::sqrt(2.0) + 0.5).margin(1e-12));
    CHECK(m == Approx(2.9142).margin(1e-3));
    CHECK(mermin_exact(w) == Approx(m).margin(1e-12));
}

TEST_CASE("separable states respect the classical bound", "[mermin]") {
    std::mt19937_64 gen(1414);
    double worst = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        StateVector s =
            state_from_amplitudes(3, oracle::random_product_state(gen));
        worst = std::max(worst, mermin_exact(s));
    }
    CHECK(worst <= 2.0 + 1e-9);
}

TEST_CASE("counts estimate converges to the exact expectation", "[mermin]") {
    StateVector w = perfect_w_state();
    for (long long shots : {1024LL, 8192LL, 65536LL}) {
        for (const MerminSetting& setting : mermin_settings()) {
            Circuit circ(3, 3);
            circ.extend(perfect_w_circuit());
            circ.extend(basis_rotation(setting.axes));
            const Counts counts = sample_counts(circ, shots, 909);
            const double estimated = expectation_from_counts(counts, shots);
            const double exact = expectation(w, PauliString(setting.axes));
            CHECK(std::abs(estimated - exact) <
                  4.0 / std::sqrt(static_cast<double>(shots)));
        }
    }
}

TEST_CASE("mermin experiment on the perfect W", "[mermin]") {
    MerminAnalysis noiseless =
        mermin_experiment(perfect_w_circuit(), 8192, 4, 5);
    // Binomial error on M is about 0.015 per repetition.
    CHECK(noiseless.value == Approx(2.914).margin(0.05));
    CHECK(noiseless.expectations.at("ABC") == Approx(-1.0).margin(1e-9));
    CHECK(noiseless.violates_classical_bound());

    // A product state stays at or below the bound (up to sampling error).
    Circuit product(3, 3);
    product.h(0);
    MerminAnalysis local = mermin_experiment(product, 8192, 5, 5);
    CHECK(local.value <= 2.0 + 0.05);

    CHECK_THROWS_AS(mermin_experiment(Circuit(2, 2), 100, 1, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(mermin_experiment(perfect_w_circuit(), 0, 1, 1),
                    std::invalid_argument);
}

TEST_CASE("dataset analysis errors", "[mermin]") {
    TomographyDataset ds;
    ds.n_qubits = 3;
    CHECK_THROWS_AS(mermin_from_dataset(ds), std::invalid_argument);
}
