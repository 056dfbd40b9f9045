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

#include "bqc/harness.h"

#include <gtest/gtest.h>

#include <cmath>

#include "bqc/report_io.h"

using namespace bqc;

namespace {

RunConfig scenario_config(Scenario s, int64_t rounds = 8000, uint64_t seed = 1) {
    RunConfig cfg;
    cfg.scenario = s;
    cfg.n_rounds = rounds;
    cfg.seed = seed;
    return cfg;
}

const TomoRow &row(const RunReport &r, SubProtocol sub, TomoBasis basis) {
    for (const auto &t : r.tomography) {
        if (t.sub == sub && t.basis == basis) return t;
    }
    throw std::runtime_error("missing tomography row");
}

}  // namespace

TEST(Scenario, names_round_trip) {
    for (auto s : {Scenario::kHonest, Scenario::kChshDishonestOffset, Scenario::kAliceFlipReport, Scenario::kAliceX3,
                   Scenario::kBobZ2Z3, Scenario::kBobQ1Swap, Scenario::kCustom}) {
        EXPECT_EQ(parse_scenario(to_string(s)), s);
    }
    EXPECT_THROW(parse_scenario("nope"), std::invalid_argument);
}

TEST(Scenario, strategies) {
    EXPECT_EQ(parse_strategy("honest"), ServerStrategy::honest());
    EXPECT_EQ(parse_strategy("measure-x3").deviation, Deviation::kMeasureX3InsteadOfZ3);
    auto off = parse_strategy("angle-offset:20");
    EXPECT_EQ(off.deviation, Deviation::kAngleOffset);
    EXPECT_NEAR(off.angle_offset, 20 * std::numbers::pi / 180, 1e-15);
    EXPECT_THROW(parse_strategy("sneaky"), std::invalid_argument);
    EXPECT_NEAR(default_dishonest_offset(), 0.349, 1e-3);
}

TEST(RunConfig, parse_flat_text) {
    auto cfg = parse_config(R"(
# comment
scenario = bob-z2z3
n_rounds = 1200
eta = 0.4
werner_p = 0.9   # trailing comment
bob_offset_deg = 10
mode = postselect
seed = 42
focus = state-tomo
threads = 2
)");
    EXPECT_EQ(cfg.scenario, Scenario::kBobZ2Z3);
    EXPECT_EQ(cfg.n_rounds, 1200);
    EXPECT_DOUBLE_EQ(cfg.eta, 0.4);
    EXPECT_DOUBLE_EQ(cfg.noise.werner_p, 0.9);
    EXPECT_NEAR(cfg.noise.bob_angle_offset, 10 * std::numbers::pi / 180, 1e-15);
    EXPECT_EQ(cfg.mode, ComputationMode::kPostselect);
    EXPECT_EQ(cfg.seed, 42u);
    EXPECT_EQ(cfg.focus, SubProtocol::kStateTomo);
    EXPECT_EQ(cfg.threads, 2);
}

TEST(RunConfig, bad_settings) {
    EXPECT_THROW(parse_config("colour = blue"), std::invalid_argument);
    EXPECT_THROW(parse_config("n_rounds"), std::invalid_argument);
    EXPECT_THROW(parse_config("n_rounds = many"), std::invalid_argument);
    RunConfig cfg;
    cfg.n_rounds = 0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = RunConfig{};
    cfg.eta = 1.0;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
    cfg = RunConfig{};
    cfg.noise.werner_p = 2;
    EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(RunConfig, dashes_and_underscores_are_interchangeable) {
    RunConfig cfg;
    apply_setting(cfg, "n-rounds", "77");
    EXPECT_EQ(cfg.n_rounds, 77);
}

TEST(RunExperiment, honest_defaults_accept) {
    RunConfig cfg;
    auto r = run_experiment(cfg).report;
    EXPECT_NEAR(r.chsh.n, 6000, 300);
    EXPECT_NEAR(r.chsh.win_rate, kOmegaStar, 3 * r.chsh.std_error);
    ASSERT_TRUE(r.chsh.verdict.has_value());
    EXPECT_TRUE(r.chsh.verdict->accepted());
    EXPECT_TRUE(r.verdict.accepted());
    EXPECT_TRUE(r.audit_clean);
    for (const auto &t : r.tomography) {
        EXPECT_EQ(t.pass_rate, 1.0);
        EXPECT_EQ(t.theory, 1.0);
    }
    EXPECT_EQ(r.computation.factors, (std::vector<std::pair<int64_t, int64_t>>{{3, 5}}));
}

TEST(RunExperiment, dishonest_offset_near_analytic) {
    auto cfg = scenario_config(Scenario::kChshDishonestOffset, 40000);
    cfg.focus = SubProtocol::kChshTest;
    auto r = run_experiment(cfg).report;
    EXPECT_NEAR(r.chsh.theory, 0.832, 1e-3);
    EXPECT_NEAR(r.chsh.win_rate, r.chsh.theory, 3 * r.chsh.std_error);
    EXPECT_FALSE(r.verdict.accepted());
}

TEST(RunExperiment, alice_x3_state_tomo_is_a_coin) {
    auto cfg = scenario_config(Scenario::kAliceX3, 8000);
    cfg.focus = SubProtocol::kStateTomo;
    auto r = run_experiment(cfg).report;
    for (auto b : {TomoBasis::kX1X2Z3, TomoBasis::kZ1Z2Z3}) {
        const auto &t = row(r, SubProtocol::kStateTomo, b);
        EXPECT_NEAR(t.pass_rate, 0.5, 3 * t.std_error);
        EXPECT_NEAR(t.theory, 0.5, 1e-12);
    }
    EXPECT_FALSE(r.verdict.accepted());
    EXPECT_EQ(r.verdict.cause, RejectCause::kStabilizerMismatch);
    ASSERT_TRUE(r.first_mismatch.has_value());
}

TEST(RunExperiment, flip_report_theory_column) {
    auto r = run_experiment(scenario_config(Scenario::kAliceFlipReport, 4000)).report;
    EXPECT_EQ(row(r, SubProtocol::kStateTomo, TomoBasis::kX1X2Z3).theory, 0.0);
    EXPECT_EQ(row(r, SubProtocol::kStateTomo, TomoBasis::kZ1Z2Z3).theory, 1.0);
}

TEST(RunExperiment, audit_clean_for_every_builtin_scenario) {
    for (auto s : {Scenario::kHonest, Scenario::kChshDishonestOffset, Scenario::kAliceFlipReport, Scenario::kAliceX3,
                   Scenario::kBobZ2Z3, Scenario::kBobQ1Swap}) {
        EXPECT_TRUE(run_experiment(scenario_config(s, 2000)).report.audit_clean) << to_string(s);
    }
}

TEST(RunExperiment, reproducible_bytes) {
    auto cfg = scenario_config(Scenario::kBobQ1Swap, 3000, 99);
    auto a = report_to_json(run_experiment(cfg).report).dump();
    auto b = report_to_json(run_experiment(cfg).report).dump();
    EXPECT_EQ(a, b);
    cfg.threads = 3;
    EXPECT_EQ(report_to_json(run_experiment(cfg).report).dump(), a);
    cfg.seed = 100;
    EXPECT_NE(report_to_json(run_experiment(cfg).report).dump(), a);
}

TEST(RunExperiment, stderr_matches_binomial) {
    auto r = run_experiment(scenario_config(Scenario::kAliceX3, 6000)).report;
    auto check = [](double p, int64_t n, double se) { EXPECT_NEAR(se, std::sqrt(p * (1 - p) / n), 1e-9); };
    check(r.chsh.win_rate, r.chsh.n, r.chsh.std_error);
    for (const auto &t : r.tomography) {
        check(t.pass_rate, t.rounds, t.std_error);
    }
    check(r.computation.output_one_rate, r.computation.rounds, r.computation.output_one_stderr);
    check(r.computation.success_rate, r.computation.rounds, r.computation.success_stderr);
}

TEST(RunExperiment, frame_corrected_output_ignores_alice_pattern) {
    auto cfg = scenario_config(Scenario::kHonest, 10000, 5);
    cfg.focus = SubProtocol::kComputation;
    auto r = run_experiment(cfg).report;
    EXPECT_EQ(r.computation.frame_independence.dof, 3);
    EXPECT_GT(r.computation.frame_independence.p_value, 0.01);
    EXPECT_NEAR(r.computation.output_one_rate, 0.5, 0.02);
}

TEST(RunExperiment, postselect_keeps_one_in_eight) {
    auto cfg = scenario_config(Scenario::kHonest, 8000, 6);
    cfg.focus = SubProtocol::kComputation;
    cfg.mode = ComputationMode::kPostselect;
    auto r = run_experiment(cfg).report;
    EXPECT_EQ(r.computation.rounds + r.computation.discarded, 8000);
    // a1, a2 and a3 are independent fair coins.
    EXPECT_NEAR(r.computation.rounds / 8000.0, 0.125, 0.015);
}

TEST(RunExperiment, summarize_reproduces_report) {
    auto cfg = scenario_config(Scenario::kBobZ2Z3, 3000, 8);
    auto result = run_experiment(cfg);
    SummaryOptions opts;
    opts.strategies = cfg.strategies();
    opts.mode = cfg.mode;
    opts.noise = cfg.noise;
    opts.scenario = to_string(cfg.scenario);
    auto again = summarize(result.transcripts, opts);
    again.seed = result.report.seed;
    again.eta = result.report.eta;
    again.werner_p = result.report.werner_p;
    EXPECT_EQ(report_to_json(again).dump(), report_to_json(result.report).dump());
}

TEST(Sweep, offset_lowers_win_rate) {
    RunConfig base;
    base.n_rounds = 30000;
    base.focus = SubProtocol::kChshTest;
    auto pts = sweep(SweepParameter::kOffset, {0, 10, 20}, base);
    ASSERT_EQ(pts.size(), 3u);
    EXPECT_GT(pts[0].report.chsh.win_rate, pts[1].report.chsh.win_rate);
    EXPECT_GT(pts[1].report.chsh.win_rate, pts[2].report.chsh.win_rate);
    EXPECT_GT(pts[0].report.chsh.theory, pts[1].report.chsh.theory);
}

TEST(Sweep, epsilon_falls_with_rounds) {
    RunConfig base;
    base.focus = SubProtocol::kChshTest;
    auto pts = sweep(SweepParameter::kNRounds, {100, 1000, 10000}, base);
    EXPECT_GT(pts[0].report.chsh.epsilon, pts[1].report.chsh.epsilon);
    EXPECT_GT(pts[1].report.chsh.epsilon, pts[2].report.chsh.epsilon);
}

TEST(Sweep, werner_noise_lowers_state_tomo_pass_rate) {
    RunConfig base;
    base.n_rounds = 10000;
    base.focus = SubProtocol::kStateTomo;
    auto pts = sweep(SweepParameter::kWernerP, {1.0, 0.95, 0.9}, base);
    for (auto b : {TomoBasis::kX1X2Z3, TomoBasis::kZ1Z2Z3}) {
        double r0 = row(pts[0].report, SubProtocol::kStateTomo, b).pass_rate;
        double r1 = row(pts[1].report, SubProtocol::kStateTomo, b).pass_rate;
        double r2 = row(pts[2].report, SubProtocol::kStateTomo, b).pass_rate;
        EXPECT_GT(r0, r1) << to_string(b);
        EXPECT_GT(r1, r2) << to_string(b);
    }
}

TEST(Sweep, rejects_bad_grid) {
    RunConfig base;
    EXPECT_THROW(sweep(SweepParameter::kEta, {}, base), std::invalid_argument);
    EXPECT_THROW(sweep(SweepParameter::kEta, {1.5}, base), std::invalid_argument);
    EXPECT_THROW(sweep(SweepParameter::kNRounds, {10.5}, base), std::invalid_argument);
}
