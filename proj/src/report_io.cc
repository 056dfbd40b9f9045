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

#include "bqc/report_io.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bqc {

using nlohmann::json;

namespace {

std::string fmt(double v) {
    std::ostringstream out;
    out.precision(10);
    out << v;
    return out.str();
}

json outcomes_to_json(const std::vector<Outcome> &outs) {
    json arr = json::array();
    for (auto o : outs) {
        arr.push_back(o.value());
    }
    return arr;
}

std::vector<Outcome> outcomes_from_json(const json &j) {
    std::vector<Outcome> outs;
    for (const auto &v : j) {
        outs.emplace_back(v.get<int>());
    }
    return outs;
}

json chi_to_json(const ChiSquareResult &c) {
    return {{"statistic", c.statistic}, {"dof", c.dof}, {"p_value", c.p_value}};
}

ChiSquareResult chi_from_json(const json &j) {
    return {j.at("statistic").get<double>(), j.at("dof").get<int>(), j.at("p_value").get<double>()};
}

json verdict_to_json(const Verdict &v) {
    json j = {{"decision", to_string(v.decision)}, {"cause", to_string(v.cause)}};
    j["round_index"] = v.round_index ? json(*v.round_index) : json(nullptr);
    return j;
}

Verdict verdict_from_json(const json &j) {
    Verdict v;
    v.decision = j.at("decision").get<std::string>() == "accept" ? Decision::kAccept : Decision::kReject;
    auto cause = j.at("cause").get<std::string>();
    for (auto c : {RejectCause::kClean, RejectCause::kChshBelowThreshold, RejectCause::kStabilizerMismatch}) {
        if (to_string(c) == cause) {
            v.cause = c;
        }
    }
    if (!j.at("round_index").is_null()) {
        v.round_index = j.at("round_index").get<uint64_t>();
    }
    return v;
}

json blindness_to_json(const ServerBlindness &b) {
    return {{"across_subprotocols", chi_to_json(b.across_subprotocols)},
            {"within_class_min_p", b.within_class_min_p},
            {"computation_hidden", b.computation_hidden}};
}

ServerBlindness blindness_from_json(const json &j) {
    ServerBlindness b;
    b.across_subprotocols = chi_from_json(j.at("across_subprotocols"));
    b.within_class_min_p = j.at("within_class_min_p").get<double>();
    b.computation_hidden = j.at("computation_hidden").get<bool>();
    return b;
}

}  // namespace

json transcript_to_json(const RoundTranscript &t) {
    json plan = json::object();
    plan["tomo_basis"] = t.plan.tomo ? json(to_string(*t.plan.tomo)) : json(nullptr);
    if (t.plan.chsh) {
        plan["chsh"] = {{"a", t.plan.chsh->a},
                        {"b", t.plan.chsh->b},
                        {"orientation", t.plan.chsh->orientation == ChshOrientation::kAliceRotated ? "alice-rotated"
                                                                                                    : "bob-rotated"}};
    } else {
        plan["chsh"] = nullptr;
    }
    return {
        {"round_index", t.round_index},
        {"sub_protocol", to_string(t.sub())},
        {"attempts", t.attempts},
        {"plan", plan},
        {"commands", {{"alice", t.alice_command.str()}, {"bob", t.bob_command.str()}}},
        {"outcomes", {{"alice", outcomes_to_json(t.alice_outcomes)}, {"bob", outcomes_to_json(t.bob_outcomes)}}},
        {"parity_success", t.parity_success ? json(*t.parity_success) : json(nullptr)},
        {"audit_ok", t.audit_ok},
        {"audit_log", t.audit_log},
    };
}

RoundTranscript transcript_from_json(const json &j) {
    RoundTranscript t;
    t.round_index = j.at("round_index").get<uint64_t>();
    t.plan.sub = parse_subprotocol(j.at("sub_protocol").get<std::string>());
    t.attempts = j.at("attempts").get<int>();
    const auto &plan = j.at("plan");
    if (!plan.at("tomo_basis").is_null()) {
        t.plan.tomo = parse_tomo_basis(plan.at("tomo_basis").get<std::string>());
    }
    if (!plan.at("chsh").is_null()) {
        const auto &c = plan.at("chsh");
        ChshQuestion q;
        q.a = c.at("a").get<int>();
        q.b = c.at("b").get<int>();
        auto orient = c.at("orientation").get<std::string>();
        if (orient != "alice-rotated" && orient != "bob-rotated") {
            throw std::invalid_argument("unknown CHSH orientation: " + orient);
        }
        q.orientation = orient == "alice-rotated" ? ChshOrientation::kAliceRotated : ChshOrientation::kBobRotated;
        t.plan.chsh = q;
    }
    t.alice_command = Command::parse(Party::kAlice, j.at("commands").at("alice").get<std::string>());
    t.bob_command = Command::parse(Party::kBob, j.at("commands").at("bob").get<std::string>());
    t.alice_outcomes = outcomes_from_json(j.at("outcomes").at("alice"));
    t.bob_outcomes = outcomes_from_json(j.at("outcomes").at("bob"));
    if (!j.at("parity_success").is_null()) {
        t.parity_success = j.at("parity_success").get<bool>();
    }
    t.audit_ok = j.at("audit_ok").get<bool>();
    t.audit_log = j.at("audit_log").get<std::vector<std::string>>();
    return t;
}

void write_text_file(const std::string &path, const std::string &content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path);
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write failed for " + path);
    }
}

void write_transcripts(const std::string &path, const std::vector<RoundTranscript> &transcripts) {
    std::string buf;
    for (const auto &t : transcripts) {
        buf += transcript_to_json(t).dump();
        buf += '\n';
    }
    write_text_file(path, buf);
}

std::vector<RoundTranscript> read_transcripts(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot read " + path);
    }
    std::vector<RoundTranscript> out;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty()) {
            out.push_back(transcript_from_json(json::parse(line)));
        }
    }
    return out;
}

json report_to_json(const RunReport &r) {
    json chsh = {{"n", r.chsh.n},
                 {"wins", r.chsh.wins},
                 {"win_rate", r.chsh.win_rate},
                 {"stderr", r.chsh.std_error},
                 {"epsilon", r.chsh.epsilon},
                 {"estimated_epsilon", r.chsh.estimated_epsilon},
                 {"theory", r.chsh.theory}};
    chsh["verdict"] = r.chsh.verdict ? verdict_to_json(*r.chsh.verdict) : json(nullptr);

    json tomo = json::array();
    for (const auto &row : r.tomography) {
        tomo.push_back({{"protocol", to_string(row.sub)},
                        {"basis", to_string(row.basis)},
                        {"rounds", row.rounds},
                        {"passes", row.passes},
                        {"pass_rate", row.pass_rate},
                        {"stderr", row.std_error},
                        {"theory", row.theory}});
    }

    const auto &c = r.computation;
    json factors = json::array();
    for (const auto &[p, q] : c.factors) {
        factors.push_back({p, q});
    }
    json comp = {{"rounds", c.rounds},
                 {"discarded", c.discarded},
                 {"parity_failures", c.parity_failures},
                 {"output_ones", c.output_ones},
                 {"output_one_rate", c.output_one_rate},
                 {"output_one_stderr", c.output_one_stderr},
                 {"successes", c.successes},
                 {"success_rate", c.success_rate},
                 {"success_stderr", c.success_stderr},
                 {"factors", factors},
                 {"frame_independence", chi_to_json(c.frame_independence)}};

    json j = {{"scenario", r.scenario},
              {"mode", r.mode},
              {"seed", r.seed},
              {"n_rounds", r.n_rounds},
              {"eta", r.eta},
              {"werner_p", r.werner_p},
              {"subprotocol_counts", r.subprotocol_counts},
              {"chsh", chsh},
              {"tomography", tomo},
              {"computation", comp},
              {"blindness", {{"alice", blindness_to_json(r.alice_blindness)}, {"bob", blindness_to_json(r.bob_blindness)}}},
              {"audit_clean", r.audit_clean},
              {"verdict", verdict_to_json(r.verdict)}};
    j["first_mismatch"] = r.first_mismatch ? json(*r.first_mismatch) : json(nullptr);
    return j;
}

RunReport report_from_json(const json &j) {
    RunReport r;
    r.scenario = j.at("scenario").get<std::string>();
    r.mode = j.at("mode").get<std::string>();
    r.seed = j.at("seed").get<uint64_t>();
    r.n_rounds = j.at("n_rounds").get<int64_t>();
    r.eta = j.at("eta").get<double>();
    r.werner_p = j.at("werner_p").get<double>();
    r.subprotocol_counts = j.at("subprotocol_counts").get<std::map<std::string, int64_t>>();

    const auto &chsh = j.at("chsh");
    r.chsh.n = chsh.at("n").get<int64_t>();
    r.chsh.wins = chsh.at("wins").get<int64_t>();
    r.chsh.win_rate = chsh.at("win_rate").get<double>();
    r.chsh.std_error = chsh.at("stderr").get<double>();
    r.chsh.epsilon = chsh.at("epsilon").get<double>();
    r.chsh.estimated_epsilon = chsh.at("estimated_epsilon").get<double>();
    r.chsh.theory = chsh.at("theory").get<double>();
    if (!chsh.at("verdict").is_null()) {
        r.chsh.verdict = verdict_from_json(chsh.at("verdict"));
    }

    for (const auto &row : j.at("tomography")) {
        TomoRow t;
        t.sub = parse_subprotocol(row.at("protocol").get<std::string>());
        t.basis = parse_tomo_basis(row.at("basis").get<std::string>());
        t.rounds = row.at("rounds").get<int64_t>();
        t.passes = row.at("passes").get<int64_t>();
        t.pass_rate = row.at("pass_rate").get<double>();
        t.std_error = row.at("stderr").get<double>();
        t.theory = row.at("theory").get<double>();
        r.tomography.push_back(t);
    }

    const auto &c = j.at("computation");
    auto &comp = r.computation;
    comp.rounds = c.at("rounds").get<int64_t>();
    comp.discarded = c.at("discarded").get<int64_t>();
    comp.parity_failures = c.at("parity_failures").get<int64_t>();
    comp.output_ones = c.at("output_ones").get<int64_t>();
    comp.output_one_rate = c.at("output_one_rate").get<double>();
    comp.output_one_stderr = c.at("output_one_stderr").get<double>();
    comp.successes = c.at("successes").get<int64_t>();
    comp.success_rate = c.at("success_rate").get<double>();
    comp.success_stderr = c.at("success_stderr").get<double>();
    for (const auto &f : c.at("factors")) {
        comp.factors.emplace_back(f.at(0).get<int64_t>(), f.at(1).get<int64_t>());
    }
    comp.frame_independence = chi_from_json(c.at("frame_independence"));

    r.alice_blindness = blindness_from_json(j.at("blindness").at("alice"));
    r.bob_blindness = blindness_from_json(j.at("blindness").at("bob"));
    r.audit_clean = j.at("audit_clean").get<bool>();
    r.verdict = verdict_from_json(j.at("verdict"));
    if (!j.at("first_mismatch").is_null()) {
        r.first_mismatch = j.at("first_mismatch").get<uint64_t>();
    }
    return r;
}

std::string report_to_csv(const RunReport &r) {
    std::ostringstream out;
    out << "section,protocol,basis,theory,simulated,stderr,rounds\n";
    out << "chsh,chsh,win," << fmt(r.chsh.theory) << "," << fmt(r.chsh.win_rate) << "," << fmt(r.chsh.std_error)
        << "," << r.chsh.n << "\n";
    for (const auto &row : r.tomography) {
        out << "tomography," << to_string(row.sub) << "," << to_string(row.basis) << "," << fmt(row.theory) << ","
            << fmt(row.pass_rate) << "," << fmt(row.std_error) << "," << row.rounds << "\n";
    }
    out << "computation,computation,output1," << fmt(0.5) << "," << fmt(r.computation.output_one_rate) << ","
        << fmt(r.computation.output_one_stderr) << "," << r.computation.rounds << "\n";
    return out.str();
}

std::string sweep_to_csv(SweepParameter parameter, const std::vector<SweepPoint> &points) {
    std::ostringstream out;
    out << "parameter,value,chsh_n,win_rate,win_stderr,epsilon,verdict";
    for (const auto &row : points.empty() ? std::vector<TomoRow>{} : points.front().report.tomography) {
        out << "," << to_string(row.sub) << ":" << to_string(row.basis);
    }
    out << ",output_one_rate\n";
    for (const auto &p : points) {
        const auto &r = p.report;
        out << to_string(parameter) << "," << fmt(p.value) << "," << r.chsh.n << "," << fmt(r.chsh.win_rate) << ","
            << fmt(r.chsh.std_error) << "," << fmt(r.chsh.epsilon) << "," << to_string(r.verdict.decision);
        for (const auto &row : r.tomography) {
            out << "," << fmt(row.pass_rate);
        }
        out << "," << fmt(r.computation.output_one_rate) << "\n";
    }
    return out.str();
}

}  // namespace bqc
