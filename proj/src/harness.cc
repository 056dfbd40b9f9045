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

#include <algorithm>
#include <cctype>
#include <exception>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "bqc/report_io.h"
#include "bqc/shor.h"

namespace bqc {

namespace {

double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

std::string trim(const std::string &s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) {
        return "";
    }
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string &key, const std::string &value) {
    size_t used = 0;
    double v = 0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != value.size()) {
        throw std::invalid_argument("bad number for " + key + ": '" + value + "'");
    }
    return v;
}

int64_t parse_int(const std::string &key, const std::string &value) {
    size_t used = 0;
    long long v = 0;
    try {
        v = std::stoll(value, &used);
    } catch (const std::exception &) {
        used = 0;
    }
    if (used == 0 || used != value.size()) {
        throw std::invalid_argument("bad integer for " + key + ": '" + value + "'");
    }
    return v;
}

double strategy_offset(const ServerStrategy &s) {
    return s.deviation == Deviation::kAngleOffset ? s.angle_offset : 0.0;
}

ServerBlindness blindness_for(const std::vector<RoundTranscript> &transcripts, Party server) {
    // Rows: sub-protocols. Columns: distinct command strings.
    std::map<std::string, size_t> column;
    std::map<std::string, CommandClass> class_of;
    std::vector<std::map<std::string, double>> counts(std::size(kAllSubProtocols));
    for (const auto &t : transcripts) {
        const auto &cmd = server == Party::kAlice ? t.alice_command : t.bob_command;
        auto key = cmd.str();
        class_of.emplace(key, classify(cmd));
        counts[static_cast<size_t>(t.sub())][key] += 1;
    }
    std::vector<std::string> keys;
    for (const auto &[k, _] : class_of) {
        keys.push_back(k);
    }

    auto table_for = [&](const std::vector<std::string> &cols) {
        std::vector<std::vector<double>> table;
        for (const auto &row : counts) {
            std::vector<double> r;
            for (const auto &c : cols) {
                auto it = row.find(c);
                r.push_back(it == row.end() ? 0.0 : it->second);
            }
            table.push_back(std::move(r));
        }
        return table;
    };

    ServerBlindness out;
    out.across_subprotocols = chi_square_independence(table_for(keys));

    std::set<CommandClass> in_tests;
    std::set<CommandClass> in_computation;
    for (auto cls : {CommandClass::kGate, CommandClass::kPauli, CommandClass::kRotated}) {
        std::vector<std::string> cols;
        for (const auto &k : keys) {
            if (class_of[k] == cls) {
                cols.push_back(k);
            }
        }
        if (cols.empty()) {
            continue;
        }
        auto table = table_for(cols);
        for (size_t sub = 0; sub < table.size(); sub++) {
            double total = 0;
            for (double v : table[sub]) {
                total += v;
            }
            if (total > 0) {
                (kAllSubProtocols[sub] == SubProtocol::kComputation ? in_computation : in_tests).insert(cls);
            }
        }
        out.within_class_min_p = std::min(out.within_class_min_p, chi_square_independence(table).p_value);
    }
    for (auto cls : in_computation) {
        out.computation_hidden = out.computation_hidden && in_tests.contains(cls);
    }
    return out;
}

void run_range(const RoundConfig &rc, uint64_t seed, size_t begin, size_t end, std::vector<RoundTranscript> &out) {
    for (size_t i = begin; i < end; i++) {
        Rng rng = Rng::for_round(seed, i);
        out[i] = run_round(i, rc, rng);
    }
}

}  // namespace

std::string to_string(Scenario s) {
    switch (s) {
        case Scenario::kHonest:
            return "honest";
        case Scenario::kChshDishonestOffset:
            return "chsh-dishonest-offset";
        case Scenario::kAliceFlipReport:
            return "alice-flip-report";
        case Scenario::kAliceX3:
            return "alice-x3";
        case Scenario::kBobZ2Z3:
            return "bob-z2z3";
        case Scenario::kBobQ1Swap:
            return "bob-q1-swap";
        case Scenario::kCustom:
            return "custom";
    }
    return "?";
}

Scenario parse_scenario(const std::string &text) {
    for (auto s : {Scenario::kHonest, Scenario::kChshDishonestOffset, Scenario::kAliceFlipReport, Scenario::kAliceX3,
                   Scenario::kBobZ2Z3, Scenario::kBobQ1Swap, Scenario::kCustom}) {
        if (to_string(s) == text) {
            return s;
        }
    }
    throw std::invalid_argument("unknown scenario: " + text);
}

ServerStrategy parse_strategy(const std::string &text) {
    const std::string prefix = "angle-offset:";
    if (text.starts_with(prefix)) {
        return {Deviation::kAngleOffset, deg_to_rad(parse_double("angle-offset", text.substr(prefix.size())))};
    }
    for (auto d : {Deviation::kHonest, Deviation::kFlipFirstReport, Deviation::kMeasureX3InsteadOfZ3,
                   Deviation::kBellControlInZ, Deviation::kFirstQubitBasisSwap}) {
        ServerStrategy s{d, 0.0};
        if (s.str() == text) {
            return s;
        }
    }
    throw std::invalid_argument("unknown strategy: " + text);
}

std::string to_string(ComputationMode m) { return m == ComputationMode::kFrameCorrect ? "frame-correct" : "postselect"; }

ComputationMode parse_mode(const std::string &text) {
    if (text == "frame-correct") {
        return ComputationMode::kFrameCorrect;
    }
    if (text == "postselect") {
        return ComputationMode::kPostselect;
    }
    throw std::invalid_argument("unknown mode: " + text);
}

double default_dishonest_offset() { return hwp_degrees_to_bloch_radians(5.0); }

void RunConfig::validate() const {
    if (n_rounds < 1) {
        throw std::invalid_argument("n_rounds must be at least 1");
    }
    if (!(eta > 0.0 && eta < 1.0)) {
        throw std::invalid_argument("eta must lie in (0, 1)");
    }
    if (threads < 1) {
        throw std::invalid_argument("threads must be at least 1");
    }
    noise.validate();
}

Strategies RunConfig::strategies() const {
    Strategies s;
    switch (scenario) {
        case Scenario::kHonest:
            break;
        case Scenario::kChshDishonestOffset:
            s.bob = {Deviation::kAngleOffset, dishonest_offset};
            break;
        case Scenario::kAliceFlipReport:
            s.alice.deviation = Deviation::kFlipFirstReport;
            break;
        case Scenario::kAliceX3:
            s.alice.deviation = Deviation::kMeasureX3InsteadOfZ3;
            break;
        case Scenario::kBobZ2Z3:
            s.bob.deviation = Deviation::kBellControlInZ;
            break;
        case Scenario::kBobQ1Swap:
            s.bob.deviation = Deviation::kFirstQubitBasisSwap;
            break;
        case Scenario::kCustom:
            s.alice = custom_alice;
            s.bob = custom_bob;
            break;
    }
    return s;
}

void apply_setting(RunConfig &config, const std::string &raw_key, const std::string &raw_value) {
    std::string key = trim(raw_key);
    std::replace(key.begin(), key.end(), '-', '_');
    std::string value = trim(raw_value);
    if (key == "scenario") {
        config.scenario = parse_scenario(value);
    } else if (key == "n_rounds") {
        config.n_rounds = parse_int(key, value);
    } else if (key == "eta") {
        config.eta = parse_double(key, value);
    } else if (key == "werner_p") {
        config.noise.werner_p = parse_double(key, value);
    } else if (key == "alice_offset_deg") {
        config.noise.alice_angle_offset = deg_to_rad(parse_double(key, value));
    } else if (key == "bob_offset_deg") {
        config.noise.bob_angle_offset = deg_to_rad(parse_double(key, value));
    } else if (key == "dishonest_offset_deg") {
        config.dishonest_offset = deg_to_rad(parse_double(key, value));
    } else if (key == "mode") {
        config.mode = parse_mode(value);
    } else if (key == "seed") {
        config.seed = static_cast<uint64_t>(parse_int(key, value));
    } else if (key == "focus") {
        config.focus = value == "all" ? std::nullopt : std::optional(parse_subprotocol(value));
    } else if (key == "alice_strategy") {
        config.custom_alice = parse_strategy(value);
    } else if (key == "bob_strategy") {
        config.custom_bob = parse_strategy(value);
    } else if (key == "threads") {
        config.threads = static_cast<int>(parse_int(key, value));
    } else if (key == "transcript_path") {
        config.transcript_path = value;
    } else if (key == "report_path") {
        config.report_path = value;
    } else if (key == "csv_path") {
        config.csv_path = value;
    } else {
        throw std::invalid_argument("unknown configuration key: " + key);
    }
}

RunConfig parse_config(const std::string &text, RunConfig base) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        lineno++;
        auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.resize(hash);
        }
        if (trim(line).empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(lineno) + " has no '='");
        }
        apply_setting(base, line.substr(0, eq), line.substr(eq + 1));
    }
    return base;
}

RunConfig load_config(const std::string &path, RunConfig base) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read config file " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), std::move(base));
}

std::optional<int> computation_output_bit(const RoundTranscript &t, ComputationMode mode) {
    if (t.sub() != SubProtocol::kComputation || t.alice_outcomes.size() != 3 || t.bob_outcomes.size() != 3) {
        throw std::invalid_argument("not a completed Computation round");
    }
    const auto &a = t.alice_outcomes;
    Outcome out = t.bob_outcomes[1];
    if (mode == ComputationMode::kPostselect) {
        if (a[0] != Outcome::plus() || a[1] != Outcome::plus() || a[2] != Outcome::plus()) {
            return std::nullopt;
        }
        return out.bit() ? 1 : 0;
    }
    // Alice's (a1 a2 = -1) leaves Z on 2B, which flips its X outcome.
    return (out * a[0] * a[1]).bit() ? 1 : 0;
}

RunReport summarize(const std::vector<RoundTranscript> &transcripts, const SummaryOptions &options) {
    RunReport r;
    r.scenario = options.scenario;
    r.mode = to_string(options.mode);
    r.n_rounds = static_cast<int64_t>(transcripts.size());
    for (auto sub : kAllSubProtocols) {
        r.subprotocol_counts[to_string(sub)] = 0;
    }

    ChshTally chsh;
    std::map<std::pair<SubProtocol, TomoBasis>, BasisTally> tomo;
    std::set<std::pair<int64_t, int64_t>> factors;
    std::vector<std::vector<double>> frame_table(4, std::vector<double>(2, 0.0));
    auto instance = shor::validate_instance(15, 11);
    auto &comp = r.computation;

    for (const auto &t : transcripts) {
        r.subprotocol_counts[to_string(t.sub())]++;
        r.audit_clean = r.audit_clean && t.audit_ok;
        comp.parity_failures += t.attempts - 1;
        switch (t.sub()) {
            case SubProtocol::kChshTest:
                chsh.add(chsh_round_won(t));
                break;
            case SubProtocol::kStateTomo:
            case SubProtocol::kProcessTomo: {
                bool pass = check_round(t);
                tomo[{t.sub(), *t.plan.tomo}].add(pass);
                if (!pass && (!r.first_mismatch || t.round_index < *r.first_mismatch)) {
                    r.first_mismatch = t.round_index;
                }
                break;
            }
            case SubProtocol::kComputation: {
                auto bit = computation_output_bit(t, options.mode);
                if (!bit) {
                    comp.discarded++;
                    break;
                }
                comp.rounds++;
                comp.output_ones += *bit;
                auto f = shor::postprocess(shor::PeriodReadout{*bit, {0}}, instance);
                if (f) {
                    comp.successes++;
                    factors.insert({f->p, f->q});
                }
                int cls = (t.alice_outcomes[0] * t.alice_outcomes[1]).bit() * 2 + t.alice_outcomes[2].bit();
                frame_table[cls][*bit] += 1;
                break;
            }
        }
    }

    auto &c = r.chsh;
    c.n = chsh.n;
    c.wins = chsh.wins;
    c.win_rate = chsh.win_rate();
    c.std_error = chsh.std_error();
    c.estimated_epsilon = chsh.n ? chsh.estimated_epsilon() : 0.0;
    {
        StateVector phi({Qubit::aux(0), Qubit::aux(1)});
        phi.apply(Gate::h(Qubit::aux(0)));
        phi.apply(Gate::cnot(Qubit::aux(0), Qubit::aux(1)));
        double ao = strategy_offset(options.strategies.alice) + options.noise.alice_angle_offset;
        double bo = strategy_offset(options.strategies.bob) + options.noise.bob_angle_offset;
        c.theory = (chsh_win_probability(phi, Qubit::aux(0), Qubit::aux(1), ChshOrientation::kAliceRotated, ao, bo) +
                    chsh_win_probability(phi, Qubit::aux(0), Qubit::aux(1), ChshOrientation::kBobRotated, ao, bo)) /
                   2.0;
    }
    if (chsh.n >= 2) {
        c.epsilon = chsh.epsilon();
        c.verdict = chsh_verdict(chsh);
    }

    const std::pair<SubProtocol, TomoBasis> rows[] = {{SubProtocol::kStateTomo, TomoBasis::kX1X2Z3},
                                                      {SubProtocol::kStateTomo, TomoBasis::kZ1Z2Z3},
                                                      {SubProtocol::kProcessTomo, TomoBasis::kZ1X2X3},
                                                      {SubProtocol::kProcessTomo, TomoBasis::kZ1Z2Z3}};
    for (const auto &[sub, basis] : rows) {
        const auto &tally = tomo[{sub, basis}];
        TomoRow row;
        row.sub = sub;
        row.basis = basis;
        row.rounds = tally.rounds;
        row.passes = tally.passes;
        row.pass_rate = tally.pass_rate();
        row.std_error = tally.std_error();
        row.theory = ideal_pass_probability(sub, basis, options.strategies.alice, options.strategies.bob);
        r.tomography.push_back(row);
    }

    if (comp.rounds > 0) {
        comp.output_one_rate = static_cast<double>(comp.output_ones) / comp.rounds;
        comp.output_one_stderr = binomial_stderr(comp.output_one_rate, comp.rounds);
        comp.success_rate = static_cast<double>(comp.successes) / comp.rounds;
        comp.success_stderr = binomial_stderr(comp.success_rate, comp.rounds);
    }
    comp.factors.assign(factors.begin(), factors.end());
    if (options.mode == ComputationMode::kFrameCorrect) {
        comp.frame_independence = chi_square_independence(frame_table);
    }

    r.alice_blindness = blindness_for(transcripts, Party::kAlice);
    r.bob_blindness = blindness_for(transcripts, Party::kBob);

    if (c.verdict && !c.verdict->accepted()) {
        r.verdict = *c.verdict;
    } else if (r.first_mismatch) {
        r.verdict = Verdict{Decision::kReject, RejectCause::kStabilizerMismatch, r.first_mismatch};
    }
    return r;
}

ExperimentResult run_experiment(const RunConfig &config) {
    config.validate();
    auto strategies = config.strategies();
    RoundConfig rc;
    rc.eta = config.eta;
    rc.alice = strategies.alice;
    rc.bob = strategies.bob;
    rc.noise = config.noise;
    rc.forced = config.focus;

    ExperimentResult result;
    auto n = static_cast<size_t>(config.n_rounds);
    result.transcripts.resize(n);
    size_t workers = std::min<size_t>(static_cast<size_t>(config.threads), n);
    if (workers <= 1) {
        run_range(rc, config.seed, 0, n, result.transcripts);
    } else {
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        size_t chunk = (n + workers - 1) / workers;
        for (size_t w = 0; w < workers; w++) {
            pool.emplace_back([&, w] {
                try {
                    run_range(rc, config.seed, w * chunk, std::min(n, (w + 1) * chunk), result.transcripts);
                } catch (...) {
                    errors[w] = std::current_exception();
                }
            });
        }
        for (auto &th : pool) {
            th.join();
        }
        for (auto &e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    SummaryOptions opts;
    opts.mode = config.mode;
    opts.strategies = strategies;
    opts.noise = config.noise;
    opts.scenario = to_string(config.scenario);
    result.report = summarize(result.transcripts, opts);
    result.report.seed = config.seed;
    result.report.eta = config.eta;
    result.report.werner_p = config.noise.werner_p;

    if (!config.transcript_path.empty()) {
        write_transcripts(config.transcript_path, result.transcripts);
    }
    if (!config.report_path.empty()) {
        write_text_file(config.report_path, report_to_json(result.report).dump(2) + "\n");
    }
    if (!config.csv_path.empty()) {
        write_text_file(config.csv_path, report_to_csv(result.report));
    }
    return result;
}

std::string to_string(SweepParameter p) {
    switch (p) {
        case SweepParameter::kEta:
            return "eta";
        case SweepParameter::kNRounds:
            return "n_rounds";
        case SweepParameter::kWernerP:
            return "werner_p";
        case SweepParameter::kOffset:
            return "offset";
    }
    return "?";
}

SweepParameter parse_sweep_parameter(const std::string &text) {
    std::string key = text;
    std::replace(key.begin(), key.end(), '-', '_');
    for (auto p : {SweepParameter::kEta, SweepParameter::kNRounds, SweepParameter::kWernerP, SweepParameter::kOffset}) {
        if (to_string(p) == key) {
            return p;
        }
    }
    throw std::invalid_argument("unknown sweep parameter: " + text);
}

std::vector<SweepPoint> sweep(SweepParameter parameter, const std::vector<double> &grid, const RunConfig &base) {
    if (grid.empty()) {
        throw std::invalid_argument("sweep grid is empty");
    }
    std::vector<RunConfig> configs;
    for (double v : grid) {
        RunConfig cfg = base;
        cfg.transcript_path.clear();
        cfg.report_path.clear();
        cfg.csv_path.clear();
        switch (parameter) {
            case SweepParameter::kEta:
                cfg.eta = v;
                break;
            case SweepParameter::kNRounds:
                if (v < 1 || v != std::floor(v)) {
                    throw std::invalid_argument("n_rounds grid values must be positive integers");
                }
                cfg.n_rounds = static_cast<int64_t>(v);
                break;
            case SweepParameter::kWernerP:
                cfg.noise.werner_p = v;
                break;
            case SweepParameter::kOffset:
                cfg.noise.bob_angle_offset = deg_to_rad(v);
                break;
        }
        cfg.validate();
        configs.push_back(cfg);
    }
    std::vector<SweepPoint> points;
    for (size_t i = 0; i < grid.size(); i++) {
        points.push_back({grid[i], run_experiment(configs[i]).report});
    }
    return points;
}

}  // namespace bqc
