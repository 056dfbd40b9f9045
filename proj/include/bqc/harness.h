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

#ifndef BQC_HARNESS_H
#define BQC_HARNESS_H

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bqc/parties.h"
#include "bqc/resources.h"
#include "bqc/stats.h"
#include "bqc/verify.h"

namespace bqc {

/// Built-in server behaviors.
enum class Scenario {
    kHonest,
    kChshDishonestOffset,  // Bob's device tilted by a fixed Bloch angle
    kAliceFlipReport,
    kAliceX3,
    kBobZ2Z3,
    kBobQ1Swap,
    kCustom,
};

std::string to_string(Scenario s);
Scenario parse_scenario(const std::string &text);

/// "honest", "flip-first-report", "measure-x3", "bell-control-z",
/// "first-qubit-swap" or "angle-offset:<degrees>" (Bloch degrees).
ServerStrategy parse_strategy(const std::string &text);

enum class ComputationMode { kFrameCorrect, kPostselect };
std::string to_string(ComputationMode m);
ComputationMode parse_mode(const std::string &text);

/// 5 degrees of half-wave-plate misalignment, as a Bloch angle (20 degrees).
double default_dishonest_offset();

struct Strategies {
    ServerStrategy alice;
    ServerStrategy bob;
};

struct RunConfig {
    Scenario scenario = Scenario::kHonest;
    /// Sized so that about 6000 rounds are CHSH tests at eta = 0.25.
    int64_t n_rounds = 24000;
    double eta = 0.25;
    NoiseModel noise;
    ComputationMode mode = ComputationMode::kFrameCorrect;
    uint64_t seed = 1;
    /// Run only this sub-protocol instead of sampling with eta.
    std::optional<SubProtocol> focus;
    /// Bloch radians used by the chsh-dishonest-offset preset.
    double dishonest_offset = default_dishonest_offset();
    /// Only read for Scenario::kCustom.
    ServerStrategy custom_alice;
    ServerStrategy custom_bob;
    int threads = 1;
    std::string transcript_path;
    std::string report_path;
    std::string csv_path;

    void validate() const;
    Strategies strategies() const;
};

/// Applies one "key = value" setting. Keys are the RunConfig field names;
/// offsets are given in degrees (werner_p, alice_offset_deg, bob_offset_deg,
/// dishonest_offset_deg, alice_strategy, bob_strategy).
void apply_setting(RunConfig &config, const std::string &key, const std::string &value);
/// Flat "key = value" lines; '#' starts a comment.
RunConfig parse_config(const std::string &text, RunConfig base = {});
RunConfig load_config(const std::string &path, RunConfig base = {});

struct ChshSection {
    int64_t n = 0;
    int64_t wins = 0;
    double win_rate = 0;
    double std_error = 0;
    /// Threshold for n; zero when fewer than two rounds were run.
    double epsilon = 0;
    double estimated_epsilon = 0;
    double theory = 0;
    std::optional<Verdict> verdict;
};

struct TomoRow {
    SubProtocol sub = SubProtocol::kStateTomo;
    TomoBasis basis = TomoBasis::kX1X2Z3;
    int64_t rounds = 0;
    int64_t passes = 0;
    double pass_rate = 0;
    double std_error = 0;
    double theory = 0;
};

struct ComputationSection {
    /// Rounds whose output was used (all of them in frame-correct mode).
    int64_t rounds = 0;
    /// Computation rounds dropped by postselect mode.
    int64_t discarded = 0;
    /// Distributions consumed by failed parity post-selections.
    int64_t parity_failures = 0;
    int64_t output_ones = 0;
    double output_one_rate = 0;
    double output_one_stderr = 0;
    int64_t successes = 0;
    double success_rate = 0;
    double success_stderr = 0;
    /// Distinct factor pairs found, ascending.
    std::vector<std::pair<int64_t, int64_t>> factors;
    /// Independence of the corrected output bit from Alice's (a1 a2, a3)
    /// pattern; only populated in frame-correct mode.
    ChiSquareResult frame_independence;
};

struct ServerBlindness {
    /// Command distribution against all four sub-protocols at once.
    ChiSquareResult across_subprotocols;
    /// Smallest p-value over command classes of the within-class test.
    double within_class_min_p = 1.0;
    /// Every command class seen in Computation rounds also occurs in a test.
    bool computation_hidden = true;
};

struct RunReport {
    std::string scenario;
    std::string mode;
    uint64_t seed = 0;
    int64_t n_rounds = 0;
    double eta = 0;
    double werner_p = 1;
    std::map<std::string, int64_t> subprotocol_counts;
    ChshSection chsh;
    std::vector<TomoRow> tomography;
    ComputationSection computation;
    ServerBlindness alice_blindness;
    ServerBlindness bob_blindness;
    bool audit_clean = true;
    std::optional<uint64_t> first_mismatch;
    Verdict verdict;
};

struct SummaryOptions {
    ComputationMode mode = ComputationMode::kFrameCorrect;
    Strategies strategies;
    /// Only the device offsets are read, for the CHSH theory value.
    NoiseModel noise;
    std::string scenario = "honest";
};

/// Builds a report purely from transcripts (also used to re-render saved runs).
RunReport summarize(const std::vector<RoundTranscript> &transcripts, const SummaryOptions &options);

struct ExperimentResult {
    RunReport report;
    std::vector<RoundTranscript> transcripts;
};

/// Runs config.n_rounds rounds with per-round streams derived from
/// (seed, round_index) and summarizes them. Writes the configured output
/// files when their paths are set.
ExperimentResult run_experiment(const RunConfig &config);

/// Client's reading of Bob's output in a Computation round: nullopt when
/// postselect mode drops the round.
std::optional<int> computation_output_bit(const RoundTranscript &t, ComputationMode mode);

enum class SweepParameter { kEta, kNRounds, kWernerP, kOffset };
std::string to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(const std::string &text);

struct SweepPoint {
    double value;
    RunReport report;
};

/// One report per grid value, all with the base seed. kOffset values are
/// Bloch degrees for Bob's device.
std::vector<SweepPoint> sweep(SweepParameter parameter, const std::vector<double> &grid, const RunConfig &base);

}  // namespace bqc

#endif
