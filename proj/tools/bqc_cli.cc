// Copyright 2026 The bqcsim Authors
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

// Command-line front end: run, sweep, report.
//
// Exit codes: 0 when the verifier accepts, 2 when it rejects, 1 on errors.

#include <cstdio>
#include <iostream>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bqc/harness.h"
#include "bqc/report_io.h"

namespace {

constexpr int kExitAccept = 0;
constexpr int kExitError = 1;
constexpr int kExitReject = 2;

// Flags named after RunConfig fields, in the order they are applied.
const std::vector<std::pair<std::string, std::string>> kConfigFlags = {
    {"scenario", "honest | chsh-dishonest-offset | alice-flip-report | alice-x3 | bob-z2z3 | bob-q1-swap | custom"},
    {"n-rounds", "total rounds (default 24000)"},
    {"eta", "probability of a computation round (default 0.25)"},
    {"seed", "64-bit base seed"},
    {"werner-p", "probability each pair is ideal"},
    {"alice-offset-deg", "Alice device offset, Bloch degrees"},
    {"bob-offset-deg", "Bob device offset, Bloch degrees"},
    {"dishonest-offset-deg", "offset for chsh-dishonest-offset, Bloch degrees (default 20)"},
    {"mode", "frame-correct | postselect"},
    {"focus", "run only one sub-protocol: computation | chsh | state-tomo | process-tomo | all"},
    {"alice-strategy", "custom scenario: honest | flip-first-report | measure-x3 | angle-offset:<deg> ..."},
    {"bob-strategy", "custom scenario: honest | bell-control-z | first-qubit-swap | angle-offset:<deg> ..."},
    {"threads", "worker threads (results do not depend on it)"},
};

struct Overrides {
    std::string config_path;
    std::map<std::string, std::string> values;
};

void add_config_flags(CLI::App *app, Overrides &ov) {
    app->add_option("--config", ov.config_path, "flat key = value configuration file");
    for (const auto &[flag, help] : kConfigFlags) {
        app->add_option("--" + flag, ov.values[flag], help);
    }
}

bqc::RunConfig build_config(const Overrides &ov) {
    bqc::RunConfig cfg;
    if (!ov.config_path.empty()) {
        cfg = bqc::load_config(ov.config_path);
    }
    for (const auto &[flag, _] : kConfigFlags) {
        const auto &v = ov.values.at(flag);
        if (!v.empty()) {
            bqc::apply_setting(cfg, flag, v);
        }
    }
    return cfg;
}

void print_summary(const bqc::RunReport &r) {
    std::printf("scenario %s  mode %s  rounds %lld\n", r.scenario.c_str(), r.mode.c_str(),
                static_cast<long long>(r.n_rounds));
    if (r.chsh.n > 0) {
        std::printf("chsh        n=%lld  win=%.4f +- %.4f  epsilon=%.4f  est=%.4f\n", static_cast<long long>(r.chsh.n),
                    r.chsh.win_rate, r.chsh.std_error, r.chsh.epsilon, r.chsh.estimated_epsilon);
    }
    for (const auto &row : r.tomography) {
        if (row.rounds == 0) {
            continue;
        }
        std::printf("%-12s %s  pass=%.4f +- %.4f  theory=%.3f  (%lld rounds)\n", bqc::to_string(row.sub).c_str(),
                    bqc::to_string(row.basis).c_str(), row.pass_rate, row.std_error, row.theory,
                    static_cast<long long>(row.rounds));
    }
    if (r.computation.rounds > 0) {
        std::printf("computation P(1)=%.4f +- %.4f  success=%.4f", r.computation.output_one_rate,
                    r.computation.output_one_stderr, r.computation.success_rate);
        for (const auto &[p, q] : r.computation.factors) {
            std::printf("  factors %lld x %lld", static_cast<long long>(p), static_cast<long long>(q));
        }
        std::printf("\n");
    }
    std::printf("audit %s\n", r.audit_clean ? "clean" : "VIOLATED");
    std::printf("verdict %s (%s", bqc::to_string(r.verdict.decision).c_str(), bqc::to_string(r.verdict.cause).c_str());
    if (r.verdict.round_index) {
        std::printf(", round %llu", static_cast<unsigned long long>(*r.verdict.round_index));
    }
    std::printf(")\n");
}

int exit_code(const bqc::RunReport &r) { return r.verdict.accepted() ? kExitAccept : kExitReject; }

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Two-server blind quantum computing simulator"};
    app.require_subcommand(1);

    Overrides run_ov;
    std::string run_transcripts, run_report, run_csv;
    auto *run = app.add_subcommand("run", "run one experiment");
    add_config_flags(run, run_ov);
    run->add_option("--transcripts", run_transcripts, "write round transcripts (JSON lines)");
    run->add_option("--report", run_report, "write the JSON report");
    run->add_option("--csv", run_csv, "write the plot table");

    Overrides sweep_ov;
    std::string sweep_param, sweep_csv, sweep_report;
    std::vector<double> grid;
    auto *sw = app.add_subcommand("sweep", "run one experiment per grid value");
    add_config_flags(sw, sweep_ov);
    sw->add_option("--parameter", sweep_param, "eta | n_rounds | werner_p | offset")->required();
    sw->add_option("--grid", grid, "comma-separated values (offset in Bloch degrees)")->required()->delimiter(',');
    sw->add_option("--csv", sweep_csv, "write the sweep table here instead of stdout");
    sw->add_option("--report", sweep_report, "write all reports as a JSON array");

    std::string rep_transcripts, rep_scenario = "honest", rep_mode = "frame-correct", rep_alice = "honest",
                                 rep_bob = "honest", rep_report, rep_csv;
    auto *rep = app.add_subcommand("report", "re-render saved transcripts");
    rep->add_option("--transcripts", rep_transcripts, "JSON-lines transcript file")->required();
    rep->add_option("--scenario", rep_scenario, "scenario used for the theory column");
    rep->add_option("--mode", rep_mode, "frame-correct | postselect");
    rep->add_option("--alice-strategy", rep_alice, "strategies for scenario=custom");
    rep->add_option("--bob-strategy", rep_bob);
    double rep_alice_off = 0, rep_bob_off = 0;
    rep->add_option("--alice-offset-deg", rep_alice_off, "Alice device offset used in the run (Bloch degrees)");
    rep->add_option("--bob-offset-deg", rep_bob_off, "Bob device offset used in the run (Bloch degrees)");
    rep->add_option("--report", rep_report, "write the JSON report");
    rep->add_option("--csv", rep_csv, "write the plot table");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitError;
    }

    try {
        if (*run) {
            auto cfg = build_config(run_ov);
            if (!run_transcripts.empty()) cfg.transcript_path = run_transcripts;
            if (!run_report.empty()) cfg.report_path = run_report;
            if (!run_csv.empty()) cfg.csv_path = run_csv;
            auto result = bqc::run_experiment(cfg);
            print_summary(result.report);
            return exit_code(result.report);
        }
        if (*sw) {
            auto cfg = build_config(sweep_ov);
            auto param = bqc::parse_sweep_parameter(sweep_param);
            auto points = bqc::sweep(param, grid, cfg);
            auto table = bqc::sweep_to_csv(param, points);
            if (sweep_csv.empty()) {
                std::cout << table;
            } else {
                bqc::write_text_file(sweep_csv, table);
            }
            if (!sweep_report.empty()) {
                nlohmann::json arr = nlohmann::json::array();
                for (const auto &p : points) {
                    arr.push_back({{"value", p.value}, {"report", bqc::report_to_json(p.report)}});
                }
                bqc::write_text_file(sweep_report, arr.dump(2) + "\n");
            }
            return kExitAccept;
        }
        if (*rep) {
            bqc::RunConfig cfg;
            bqc::apply_setting(cfg, "scenario", rep_scenario);
            bqc::apply_setting(cfg, "alice_strategy", rep_alice);
            bqc::apply_setting(cfg, "bob_strategy", rep_bob);
            cfg.noise.alice_angle_offset = rep_alice_off * std::numbers::pi / 180;
            cfg.noise.bob_angle_offset = rep_bob_off * std::numbers::pi / 180;
            cfg.noise.validate();
            bqc::SummaryOptions opts;
            opts.mode = bqc::parse_mode(rep_mode);
            opts.strategies = cfg.strategies();
            opts.noise = cfg.noise;
            opts.scenario = rep_scenario;
            auto report = bqc::summarize(bqc::read_transcripts(rep_transcripts), opts);
            if (!rep_report.empty()) {
                bqc::write_text_file(rep_report, bqc::report_to_json(report).dump(2) + "\n");
            }
            if (!rep_csv.empty()) {
                bqc::write_text_file(rep_csv, bqc::report_to_csv(report));
            }
            print_summary(report);
            return exit_code(report);
        }
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitError;
    }
    return kExitError;
}
