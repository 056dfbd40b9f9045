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

// Acceptance suite: one PASS/FAIL line per criterion. Exit status is nonzero
// when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "bqc/harness.h"
#include "bqc/shor.h"
#include "bqc/verify.h"
#include "oracles.h"

using namespace bqc;

namespace {

using Clock = std::chrono::steady_clock;

int failures = 0;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

void report(int id, bool pass, const std::string &title, const std::string &detail) {
    std::printf("%s  [%2d] %s: %s\n", pass ? "PASS" : "FAIL", id, title.c_str(), detail.c_str());
    std::fflush(stdout);
    failures += pass ? 0 : 1;
}

std::string fmt(const char *f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

RunConfig config(Scenario s, int64_t rounds, uint64_t seed, std::optional<SubProtocol> focus = std::nullopt) {
    RunConfig cfg;
    cfg.scenario = s;
    cfg.n_rounds = rounds;
    cfg.seed = seed;
    cfg.focus = focus;
    return cfg;
}

// 1: exact honest win probability on the distributed register.
void chsh_analytics() {
    auto t0 = Clock::now();
    Rng rng(1);
    auto reg = distribute_pairs(NoiseModel{}, rng);
    double worst = 0;
    for (auto o : {ChshOrientation::kAliceRotated, ChshOrientation::kBobRotated}) {
        double p = chsh_win_probability(reg.state, Qubit::alice(kChshPair), Qubit::bob(kChshPair), o);
        worst = std::max(worst, std::abs(p - std::pow(std::cos(std::numbers::pi / 8), 2)));
    }
    double dt = seconds_since(t0);
    report(1, worst < 1e-9 && dt < 1.0, "CHSH analytics", fmt("|p - cos^2(pi/8)| = %.2e, %.3f s", worst, dt));
}

// 2
void threshold() {
    double e = chsh_threshold(6000);
    report(2, e >= 0.0134 && e <= 0.0136, "threshold formula", fmt("epsilon(6000) = %.5f", e));
}

// 3 and 4: repeated 6000-round CHSH runs.
int count_accepts(Scenario s, int runs, double *mean_win) {
    int accepts = 0;
    double sum = 0;
    for (int k = 0; k < runs; k++) {
        auto r = run_experiment(config(s, 6000, 1000 + k, SubProtocol::kChshTest)).report;
        accepts += r.chsh.verdict && r.chsh.verdict->accepted();
        sum += r.chsh.win_rate;
    }
    *mean_win = sum / runs;
    return accepts;
}

void honest_acceptance() {
    auto t0 = Clock::now();
    double mean = 0;
    int accepts = count_accepts(Scenario::kHonest, 100, &mean);
    double dt = seconds_since(t0);
    report(3, accepts >= 95 && dt < 120, "honest acceptance",
           fmt("%d/100 runs accepted (mean win %.4f), %.1f s", accepts, mean, dt));
}

void dishonest_rejection() {
    auto big = run_experiment(config(Scenario::kChshDishonestOffset, 100000, 7, SubProtocol::kChshTest)).report;
    double w = big.chsh.win_rate;
    double mean = 0;
    int rejects = 100 - count_accepts(Scenario::kChshDishonestOffset, 100, &mean);
    report(4, w >= 0.825 && w <= 0.839 && rejects >= 75, "dishonest rejection",
           fmt("win %.4f +- %.4f over 1e5 rounds, %d/100 runs rejected", w, big.chsh.std_error, rejects));
}

// 5
void shor_output() {
    auto r = run_experiment(config(Scenario::kHonest, 10000, 11, SubProtocol::kComputation)).report;
    double p = r.computation.output_one_rate;
    bool factors_ok = r.computation.factors == std::vector<std::pair<int64_t, int64_t>>{{3, 5}};

    Rng rng(12);
    int ones = 0;
    for (int i = 0; i < 10000; i++) {
        ones += shor::run_monolithic(rng);
    }
    double pm = ones / 10000.0;
    double pooled = (p + pm) / 2;
    double sigma = std::sqrt(pooled * (1 - pooled) * (1.0 / r.computation.rounds + 1.0 / 10000));
    bool agree = std::abs(p - pm) <= 3 * sigma;
    report(5, std::abs(p - 0.5) <= 0.02 && factors_ok && agree, "Shor output",
           fmt("distributed P(1) = %.4f, monolithic %.4f (3 sigma = %.4f), factors %s", p, pm, 3 * sigma,
               factors_ok ? "3 x 5" : "WRONG"));
}

// 6
void tomography() {
    struct Case {
        Scenario scenario;
        SubProtocol sub;
        double first, second;
    };
    const Case cases[] = {
        {Scenario::kHonest, SubProtocol::kStateTomo, 1, 1},
        {Scenario::kAliceFlipReport, SubProtocol::kStateTomo, 0, 1},
        {Scenario::kAliceX3, SubProtocol::kStateTomo, 0.5, 0.5},
        {Scenario::kHonest, SubProtocol::kProcessTomo, 1, 1},
        {Scenario::kBobZ2Z3, SubProtocol::kProcessTomo, 0.5, 1},
        {Scenario::kBobQ1Swap, SubProtocol::kProcessTomo, 0.5, 0.5},
    };
    bool ok = true;
    std::string detail;
    uint64_t seed = 20;
    for (const auto &c : cases) {
        // About 10^4 rounds per basis.
        auto r = run_experiment(config(c.scenario, 20000, seed++, c.sub)).report;
        std::vector<double> got;
        for (const auto &row : r.tomography) {
            if (row.sub == c.sub) got.push_back(row.pass_rate);
        }
        ok = ok && got.size() == 2 && std::abs(got[0] - c.first) <= 0.03 && std::abs(got[1] - c.second) <= 0.03;
        detail += fmt("%s%s/%s (%.3f, %.3f)", detail.empty() ? "" : ", ", to_string(c.scenario).c_str(), to_string(c.sub).c_str(), got[0], got[1]);
    }
    report(6, ok, "tomography pass rates", detail);
}

// 7
void hofmann_sandwich() {
    std::mt19937_64 gen(30);
    bool ok = true;
    double min_gap = 1;
    for (int trial = 0; trial < 20; trial++) {
        auto ch = oracle::random_channel(gen);
        double fz = truth_table_fidelity(simulate_cnot_truth_table(ch, TruthTableBasis::kZ),
                                         cnot_truth_table(TruthTableBasis::kZ));
        double fx = truth_table_fidelity(simulate_cnot_truth_table(ch, TruthTableBasis::kX),
                                         cnot_truth_table(TruthTableBasis::kX));
        auto b = hofmann_bounds(fz, fx);
        double f = oracle::brute_force_process_fidelity(ch);
        ok = ok && b.lower <= f + 1e-12 && f <= b.upper + 1e-12;
        min_gap = std::min({min_gap, f - b.lower, b.upper - f});
    }
    auto ex = hofmann_bounds(0.95, 0.92);
    bool ex_ok = std::abs(ex.lower - 0.87) < 1e-12 && std::abs(ex.upper - 0.92) < 1e-12;
    report(7, ok && ex_ok, "Hofmann sandwich",
           fmt("20/20 channels bracketed: %s (min slack %.2e); (0.95, 0.92) -> (%.2f, %.2f)", ok ? "yes" : "no",
               min_gap, ex.lower, ex.upper));
}

// 8
void blindness() {
    auto r = run_experiment(config(Scenario::kHonest, 40000, 40)).report;
    bool audit = true;
    for (auto s : {Scenario::kHonest, Scenario::kChshDishonestOffset, Scenario::kAliceFlipReport, Scenario::kAliceX3,
                   Scenario::kBobZ2Z3, Scenario::kBobQ1Swap}) {
        audit = audit && run_experiment(config(s, 4000, 41)).report.audit_clean;
    }
    double pa = r.alice_blindness.across_subprotocols.p_value;
    double pb = r.bob_blindness.across_subprotocols.p_value;
    report(8, pa > 0.01 && pb > 0.01 && audit, "blindness",
           fmt("four-way command chi-square p: Alice %.3g, Bob %.3g; within-class min p: Alice %.3g, Bob %.3g; "
               "computation commands hidden: %s; audit clean: %s",
               pa, pb, r.alice_blindness.within_class_min_p, r.bob_blindness.within_class_min_p,
               r.alice_blindness.computation_hidden && r.bob_blindness.computation_hidden ? "yes" : "no",
               audit ? "yes" : "no"));
}

// 9
void mode_equivalence() {
    auto fc = run_experiment(config(Scenario::kHonest, 10000, 50, SubProtocol::kComputation)).report.computation;
    // Postselect keeps one round in eight; run until 10^4 are kept.
    auto cfg = config(Scenario::kHonest, 82000, 51, SubProtocol::kComputation);
    cfg.mode = ComputationMode::kPostselect;
    auto ps = run_experiment(cfg).report.computation;
    double p = (fc.output_ones + ps.output_ones) / double(fc.rounds + ps.rounds);
    double sigma = std::sqrt(p * (1 - p) * (1.0 / fc.rounds + 1.0 / ps.rounds));
    double diff = std::abs(fc.output_one_rate - ps.output_one_rate);
    report(9, diff <= 3 * sigma && ps.rounds >= 10000, "mode equivalence",
           fmt("frame-correct %.4f (%lld rounds), postselect %.4f (%lld rounds), |diff| %.4f <= 3 sigma %.4f",
               fc.output_one_rate, static_cast<long long>(fc.rounds), ps.output_one_rate,
               static_cast<long long>(ps.rounds), diff, 3 * sigma));
}

}  // namespace

int main() {
    auto t0 = Clock::now();
    chsh_analytics();
    threshold();
    honest_acceptance();
    dishonest_rejection();
    shor_output();
    tomography();
    hofmann_sandwich();
    blindness();
    mode_equivalence();
    double dt = seconds_since(t0);
    report(10, dt < 300, "suite runtime", fmt("acceptance suite %.1f s (see ctest total for the full suite)", dt));
    std::printf("%d criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
