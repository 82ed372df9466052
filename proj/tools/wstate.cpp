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

// Command-line front end: reproducible W-state experiments with
// machine-readable output. Every command is deterministic for a fixed
// seed; WSTATE_THREADS caps sampling parallelism without changing results.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "wstate/json_io.hpp"
#include "wstate/mermin.hpp"
#include "wstate/sampling.hpp"
#include "wstate/splitting.hpp"
#include "wstate/tomography.hpp"
#include "wstate/w_states.hpp"

namespace {

using namespace wstate;

struct CommonOptions {
    long long shots = 8192;
    std::uint64_t seed = 1;
    int reps = 5;
    std::string noise_json;
    std::string out_path;
    std::string format = "json";
    std::string circuit_path;
};

std::optional<NoiseModel> parse_noise(const std::string& text) {
    if (text.empty()) {
        return std::nullopt;
    }
    NoiseModel model = NoiseModel::from_json(json::parse(text));
    if (model.is_zero()) {
        return std::nullopt;
    }
    return model;
}

Circuit load_target_circuit(const std::string& path) {
    if (path.empty()) {
        return perfect_w_circuit();
    }
    return Circuit::from_json(load_json_file(path));
}

void emit(const CommonOptions& opts, const std::string& text) {
    if (opts.out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(opts.out_path);
    if (!out) {
        throw std::runtime_error("cannot write file: " + opts.out_path);
    }
    out << text;
}

std::string format_double(double v, int digits = 6) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.*f", digits, v);
    return buffer;
}

/// 50-column probability bar with (mean - sd, mean + sd) whisker marks.
std::string histogram_bar(double mean, double sd) {
    constexpr int kWidth = 50;
    std::string bar(kWidth, ' ');
    const int fill = std::min(
        kWidth, static_cast<int>(std::lround(mean * kWidth)));
    for (int i = 0; i < fill; ++i) {
        bar[static_cast<std::size_t>(i)] = '#';
    }
    auto column = [&](double p) {
        return std::min(kWidth - 1,
                        std::max(0, static_cast<int>(std::lround(p * kWidth))));
    };
    if (sd > 0.0) {
        bar[static_cast<std::size_t>(column(mean - sd))] = '(';
        bar[static_cast<std::size_t>(column(mean + sd))] = ')';
    }
    return "[" + bar + "]";
}

int cmd_generate(const CommonOptions& opts) {
    const auto noise = parse_noise(opts.noise_json);
    const Circuit target = load_target_circuit(opts.circuit_path);
    const auto stats = repeat_probability_stats(
        target, opts.shots, opts.reps, opts.seed,
        noise ? &*noise : nullptr);

    if (opts.format == "json") {
        json outcomes = json::object();
        for (const auto& [bits, s] : stats) {
            outcomes[bits] = {{"mean_probability", s.mean_probability},
                              {"sd", s.sd}};
        }
        json doc{{"command", "generate"},
                 {"shots", opts.shots},
                 {"seed", opts.seed},
                 {"repetitions", opts.reps},
                 {"outcomes", std::move(outcomes)}};
        if (noise) {
            doc["noise"] = noise->to_json();
        }
        emit(opts, doc.dump(2) + "\n");
    } else if (opts.format == "csv") {
        std::string text = "outcome,mean_probability,sd\n";
        for (const auto& [bits, s] : stats) {
            text += bits + "," + format_double(s.mean_probability) + "," +
                    format_double(s.sd) + "\n";
        }
        emit(opts, text);
    } else {
        std::string text;
        text += "shots=" + std::to_string(opts.shots) +
                " repetitions=" + std::to_string(opts.reps) +
                " seed=" + std::to_string(opts.seed) + "\n";
        for (const auto& [bits, s] : stats) {
            text += bits + "  " + format_double(s.mean_probability, 4) +
                    " ± " + format_double(s.sd, 4) + "  " +
                    histogram_bar(s.mean_probability, s.sd) + "\n";
        }
        emit(opts, text);
    }
    return 0;
}

int cmd_tomo(const CommonOptions& opts, bool exact,
             const std::string& dataset_out) {
    const auto noise = parse_noise(opts.noise_json);
    const Circuit target = load_target_circuit(opts.circuit_path);
    const StateVector ideal = ideal_state(target);
    const TomographyDataset dataset =
        exact ? exact_dataset(ideal)
              : sampled_dataset(target, opts.shots, opts.seed,
                                noise ? &*noise : nullptr);
    if (!dataset_out.empty()) {
        write_json_file(dataset_out, dataset.to_json());
    }
    const TomographyReport report =
        analyse_dataset(dataset, ideal, exact ? 0 : opts.shots);
    json doc{{"command", "tomo"},
             {"shots_per_setting", report.shots_per_setting},
             {"seed", opts.seed},
             {"fidelity", report.fidelity},
             {"raw_min_eigenvalue", report.raw_min_eigenvalue},
             {"rho", matrix_to_json(report.rho.mat)}};
    if (noise) {
        doc["noise"] = noise->to_json();
    }
    emit(opts, doc.dump(2) + "\n");
    return 0;
}

int cmd_mermin(const CommonOptions& opts, const std::string& analyze_path) {
    MerminAnalysis analysis;
    json doc{{"command", "mermin"}};
    if (!analyze_path.empty()) {
        analysis = mermin_from_dataset(
            TomographyDataset::from_json(load_json_file(analyze_path)));
        doc["source"] = analyze_path;
    } else {
        const auto noise = parse_noise(opts.noise_json);
        const Circuit target = load_target_circuit(opts.circuit_path);
        analysis = mermin_experiment(target, opts.shots, opts.seed, opts.reps,
                                     noise ? &*noise : nullptr);
        doc["shots"] = opts.shots;
        doc["seed"] = opts.seed;
        doc["repetitions"] = opts.reps;
        if (noise) {
            doc["noise"] = noise->to_json();
        }
    }
    doc["M"] = analysis.value;
    doc["sd"] = analysis.sd;
    doc["expectations"] = analysis.expectations;
    doc["violates_classical_bound"] = analysis.violates_classical_bound();
    emit(opts, doc.dump(2) + "\n");
    return 0;
}

int cmd_split(const CommonOptions& opts, const std::string& forced_bits,
              const std::string& message_path) {
    const auto noise = parse_noise(opts.noise_json);
    std::optional<BellOutcome> forced;
    if (!forced_bits.empty()) {
        if (forced_bits.size() != 2 ||
            forced_bits.find_first_not_of("01") != std::string::npos) {
            throw CLI::ValidationError(
                "--force-outcome expects two bits, e.g. 01");
        }
        forced = BellOutcome{forced_bits[0] - '0', forced_bits[1] - '0'};
    }
    const MessageState msg =
        message_path.empty()
            ? message_from_circuit(message_prep_circuit())
            : message_from_circuit(
                  Circuit::from_json(load_json_file(message_path)));

    json doc{{"command", "split"},
             {"seed", opts.seed},
             {"message", {complex_to_json(msg.alpha), complex_to_json(msg.beta)}}};
    if (noise) {
        doc["noise"] = noise->to_json();
    }
    if (forced) {
        doc["forced_outcome"] = {forced->b_z, forced->b_x};
    }
    if (opts.reps == 1) {
        const ProtocolResult r =
            run_protocol(msg, opts.seed, noise ? &*noise : nullptr, forced);
        doc.update(r.to_json());
    } else {
        const ProtocolBatch batch =
            run_protocol_batch(msg, opts.reps, opts.seed,
                               noise ? &*noise : nullptr, forced,
                               /*keep_runs=*/opts.reps <= 64);
        doc["runs"] = batch.runs;
        doc["aggregate"] = {{"fidelity_mean", batch.fidelity_mean},
                            {"fidelity_sd", batch.fidelity_sd},
                            {"charlie_p0_mean", batch.charlie_p0_mean}};
        doc["bob_rho_mean"] = matrix_to_json(batch.bob_state_mean.mat);
        if (!batch.results.empty()) {
            json runs = json::array();
            for (const ProtocolResult& r : batch.results) {
                runs.push_back({{"outcome", {r.outcome.b_z, r.outcome.b_x}},
                                {"fidelity", r.fidelity},
                                {"charlie_p0", r.charlie_p0}});
            }
            doc["runs_detail"] = std::move(runs);
        }
    }
    emit(opts, doc.dump(2) + "\n");
    return 0;
}

int cmd_analyze(const CommonOptions& opts, const std::string& kind,
                const std::string& path, const std::string& target) {
    if (kind == "mermin") {
        return cmd_mermin(opts, path);
    }
    const TomographyDataset dataset =
        TomographyDataset::from_json(load_json_file(path));
    const DensityMatrix raw = reconstruct_density(stokes_from_counts(dataset));
    const DensityMatrix rho = project_physical(raw);
    json doc{{"command", "analyze"},
             {"kind", "tomo"},
             {"source", path},
             {"raw_min_eigenvalue", min_eigenvalue(raw)},
             {"rho", matrix_to_json(rho.mat)}};
    if (target == "perfect-w") {
        if (dataset.n_qubits != 3) {
            throw std::runtime_error(
                "--target perfect-w needs a 3-qubit dataset");
        }
        doc["fidelity"] =
            fidelity(density_from_state(perfect_w_state()), rho);
    }
    emit(opts, doc.dump(2) + "\n");
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "wstate: W-state generation, tomography, Mermin tests and "
        "quantum information splitting on a seeded state-vector simulator"};
    app.require_subcommand(1);

    CommonOptions opts;
    auto add_common = [&opts](CLI::App* cmd, bool with_format = false) {
        cmd->add_option("--shots", opts.shots, "shots per run")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--seed", opts.seed, "random seed");
        cmd->add_option("--reps", opts.reps, "independent repetitions")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--noise", opts.noise_json,
                        "noise model as JSON, e.g. "
                        "'{\"p1\":0.01,\"p2\":0.02,\"r01\":0.02,\"r10\":0.02}'");
        cmd->add_option("--out", opts.out_path, "write output to a file");
        if (with_format) {
            cmd->add_option("--format", opts.format, "output format")
                ->check(CLI::IsMember({"json", "csv", "text"}));
        }
    };

    CLI::App* generate = app.add_subcommand(
        "generate", "sample the perfect-W circuit and report a histogram");
    add_common(generate, true);
    generate->add_option("--circuit", opts.circuit_path,
                         "circuit JSON file (default: built-in perfect W)");

    CLI::App* tomo = app.add_subcommand(
        "tomo", "full state tomography of a preparation circuit");
    bool exact = false;
    std::string dataset_out;
    add_common(tomo);
    tomo->add_flag("--exact", exact,
                   "use exact probabilities (infinite-shot limit)");
    tomo->add_option("--circuit", opts.circuit_path,
                     "circuit JSON file (default: built-in perfect W)");
    tomo->add_option("--dataset-out", dataset_out,
                     "also write the per-setting counts dataset JSON");

    CLI::App* mermin = app.add_subcommand(
        "mermin", "Mermin polynomial from sampling or recorded data");
    add_common(mermin);
    std::string analyze_path;
    mermin->add_option("--analyze", analyze_path,
                       "re-analyse a four-setting counts/probability file");
    mermin->add_option("--circuit", opts.circuit_path,
                       "circuit JSON file (default: built-in perfect W)");

    CLI::App* split = app.add_subcommand(
        "split", "run the information-splitting protocol");
    add_common(split);
    std::string forced_bits;
    std::string message_path;
    split->add_option("--force-outcome", forced_bits,
                      "post-select a Bell branch, two bits (b_z b_x)");
    split->add_option("--message-circuit", message_path,
                      "1-qubit preparation circuit JSON for the message");

    CLI::App* analyze = app.add_subcommand(
        "analyze", "re-analyse recorded measurement data");
    add_common(analyze);
    std::string kind;
    std::string input_path;
    std::string target = "none";
    analyze->add_option("--kind", kind, "dataset kind")
        ->required()
        ->check(CLI::IsMember({"mermin", "tomo"}));
    analyze->add_option("file", input_path, "dataset JSON file")->required();
    analyze->add_option("--target", target,
                        "fidelity reference for tomo datasets")
        ->check(CLI::IsMember({"none", "perfect-w"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (generate->parsed()) {
            return cmd_generate(opts);
        }
        if (tomo->parsed()) {
            return cmd_tomo(opts, exact, dataset_out);
        }
        if (mermin->parsed()) {
            return cmd_mermin(opts, analyze_path);
        }
        if (split->parsed()) {
            return cmd_split(opts, forced_bits, message_path);
        }
        if (analyze->parsed()) {
            return cmd_analyze(opts, kind, input_path, target);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
