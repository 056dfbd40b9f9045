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

#include "bqc/parties.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace bqc {

namespace {

std::vector<std::string> split(const std::string &text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    int depth = 0;
    for (char c : text) {
        if (c == '(') {
            depth++;
        } else if (c == ')') {
            depth--;
        }
        if (c == sep && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    parts.push_back(cur);
    return parts;
}

// "NAME(arg1,arg2)" -> {NAME, [arg1, arg2]}.
std::pair<std::string, std::vector<std::string>> parse_call(const std::string &text) {
    auto open = text.find('(');
    if (open == std::string::npos || text.empty() || text.back() != ')') {
        throw std::invalid_argument("malformed command token: " + text);
    }
    auto name = text.substr(0, open);
    auto args = split(text.substr(open + 1, text.size() - open - 2), ',');
    return {name, args};
}

Gate parse_gate(const std::string &text) {
    auto [name, args] = parse_call(text);
    if (name == "CNOT" && args.size() == 2) {
        return Gate::cnot(Qubit::parse(args[0]), Qubit::parse(args[1]));
    }
    if (args.size() != 1) {
        throw std::invalid_argument("malformed gate: " + text);
    }
    Qubit q = Qubit::parse(args[0]);
    if (name == "H") return Gate::h(q);
    if (name == "X") return Gate::x(q);
    if (name == "Y") return Gate::y(q);
    if (name == "Z") return Gate::z(q);
    throw std::invalid_argument("unknown gate: " + text);
}

Instruction measure(Qubit q, MeasurementBasis basis) { return Instruction{q, {}, basis}; }

MeasurementBasis pauli(bool x) { return x ? MeasurementBasis::x() : MeasurementBasis::z(); }

MeasurementBasis tilted(int question) {
    return MeasurementBasis::angle(question == 0 ? std::numbers::pi / 4 : -std::numbers::pi / 4);
}

char tag(Party p) { return p == Party::kAlice ? 'A' : p == Party::kBob ? 'B' : 'R'; }

}  // namespace

std::string to_string(SubProtocol sub) {
    switch (sub) {
        case SubProtocol::kComputation:
            return "computation";
        case SubProtocol::kChshTest:
            return "chsh";
        case SubProtocol::kStateTomo:
            return "state-tomo";
        case SubProtocol::kProcessTomo:
            return "process-tomo";
    }
    return "?";
}

SubProtocol parse_subprotocol(const std::string &text) {
    for (auto sub : kAllSubProtocols) {
        if (to_string(sub) == text) {
            return sub;
        }
    }
    throw std::invalid_argument("unknown sub-protocol: " + text);
}

SubProtocol sample_subprotocol(double eta, Rng &rng) {
    if (!(eta > 0.0 && eta < 1.0)) {
        throw std::invalid_argument("eta must lie in (0, 1)");
    }
    double u = rng.uniform();
    if (u < eta) {
        return SubProtocol::kComputation;
    }
    auto k = static_cast<int>((u - eta) / ((1.0 - eta) / 3.0));
    switch (std::min(k, 2)) {
        case 0:
            return SubProtocol::kChshTest;
        case 1:
            return SubProtocol::kStateTomo;
        default:
            return SubProtocol::kProcessTomo;
    }
}

std::string to_string(TomoBasis basis) {
    switch (basis) {
        case TomoBasis::kX1X2Z3:
            return "X1X2Z3";
        case TomoBasis::kZ1Z2Z3:
            return "Z1Z2Z3";
        case TomoBasis::kZ1X2X3:
            return "Z1X2X3";
    }
    return "?";
}

TomoBasis parse_tomo_basis(const std::string &text) {
    for (auto b : {TomoBasis::kX1X2Z3, TomoBasis::kZ1Z2Z3, TomoBasis::kZ1X2X3}) {
        if (to_string(b) == text) {
            return b;
        }
    }
    throw std::invalid_argument("unknown tomography basis: " + text);
}

std::string Command::str() const {
    std::vector<std::string> parts;
    if (parity) {
        parts.push_back("P(" + parity->first.str() + "," + parity->second.str() + ")");
    }
    for (const auto &step : steps) {
        std::string s;
        for (const auto &g : step.gates) {
            s += g.str() + ">";
        }
        s += "M(" + step.qubit.str() + "," + step.basis.str() + ")";
        parts.push_back(s);
    }
    std::string out;
    for (size_t i = 0; i < parts.size(); i++) {
        out += (i ? ";" : "") + parts[i];
    }
    return out;
}

Command Command::parse(Party server, const std::string &text) {
    Command cmd;
    cmd.server = server;
    for (const auto &part : split(text, ';')) {
        auto chain = split(part, '>');
        auto [name, args] = parse_call(chain.back());
        if (name == "P" && chain.size() == 1 && args.size() == 2) {
            if (cmd.parity || !cmd.steps.empty()) {
                throw std::invalid_argument("parity step must come first: " + text);
            }
            cmd.parity = std::make_pair(Qubit::parse(args[0]), Qubit::parse(args[1]));
            continue;
        }
        if (name != "M" || args.size() != 2) {
            throw std::invalid_argument("malformed command step: " + part);
        }
        Instruction ins{Qubit::parse(args[0]), {}, MeasurementBasis::parse(args[1])};
        for (size_t i = 0; i + 1 < chain.size(); i++) {
            ins.gates.push_back(parse_gate(chain[i]));
        }
        cmd.steps.push_back(std::move(ins));
    }
    return cmd;
}

CommandClass classify(const Command &cmd) {
    if (cmd.parity) {
        return CommandClass::kGate;
    }
    bool rotated = false;
    for (const auto &s : cmd.steps) {
        if (!s.gates.empty()) {
            return CommandClass::kGate;
        }
        rotated |= s.basis.kind() == MeasurementBasis::Kind::kBlochAngle;
    }
    return rotated ? CommandClass::kRotated : CommandClass::kPauli;
}

std::string to_string(CommandClass cls) {
    switch (cls) {
        case CommandClass::kGate:
            return "gate";
        case CommandClass::kPauli:
            return "pauli";
        case CommandClass::kRotated:
            return "rotated";
    }
    return "?";
}

Command computation_a() {
    Command cmd;
    cmd.server = Party::kAlice;
    cmd.parity = std::make_pair(Qubit::alice(1), Qubit::alice(2));
    cmd.steps = {measure(Qubit::alice(1), MeasurementBasis::x()), measure(Qubit::alice(2), MeasurementBasis::x()),
                 measure(Qubit::alice(3), MeasurementBasis::z())};
    return cmd;
}

Command computation_b() {
    Command cmd;
    cmd.server = Party::kBob;
    // Bell measurement of (2B, 3B): CNOT, then X on the control and Z on the target.
    cmd.steps = {measure(Qubit::bob(1), MeasurementBasis::z()),
                 Instruction{Qubit::bob(2), {Gate::cnot(Qubit::bob(2), Qubit::bob(3))}, MeasurementBasis::x()},
                 measure(Qubit::bob(3), MeasurementBasis::z())};
    return cmd;
}

Command alice_pauli_readout(TomoBasis basis) {
    if (basis == TomoBasis::kX1X2Z3) {
        throw std::invalid_argument("X1X2Z3 is not an Alice readout");
    }
    bool x = basis == TomoBasis::kZ1X2X3;
    Command cmd;
    cmd.server = Party::kAlice;
    cmd.steps = {measure(Qubit::alice(1), MeasurementBasis::z()), measure(Qubit::alice(2), pauli(x)),
                 measure(Qubit::alice(3), pauli(x))};
    return cmd;
}

Command bob_pauli_readout(TomoBasis basis) {
    if (basis == TomoBasis::kZ1X2X3) {
        throw std::invalid_argument("Z1X2X3 is not a Bob readout");
    }
    bool x = basis == TomoBasis::kX1X2Z3;
    Command cmd;
    cmd.server = Party::kBob;
    cmd.steps = {measure(Qubit::bob(1), pauli(x)), measure(Qubit::bob(2), pauli(x)),
                 measure(Qubit::bob(3), MeasurementBasis::z())};
    return cmd;
}

RoundCommands commands_for_plan(const RoundPlan &plan, Rng &rng) {
    switch (plan.sub) {
        case SubProtocol::kComputation:
            return {computation_a(), computation_b(), plan};
        case SubProtocol::kStateTomo:
            if (!plan.tomo || *plan.tomo == TomoBasis::kZ1X2X3) {
                throw std::invalid_argument("state tomography needs basis X1X2Z3 or Z1Z2Z3");
            }
            return {computation_a(), bob_pauli_readout(*plan.tomo), plan};
        case SubProtocol::kProcessTomo:
            if (!plan.tomo || *plan.tomo == TomoBasis::kX1X2Z3) {
                throw std::invalid_argument("process tomography needs basis Z1X2X3 or Z1Z2Z3");
            }
            return {alice_pauli_readout(*plan.tomo), computation_b(), plan};
        case SubProtocol::kChshTest:
            break;
    }
    if (!plan.chsh) {
        throw std::invalid_argument("CHSH plan without questions");
    }
    const auto &q = *plan.chsh;
    // The unrotated server receives exactly a tomography readout whose
    // qubit-2 basis encodes its question (0 -> Z, 1 -> X).
    if (q.orientation == ChshOrientation::kAliceRotated) {
        Command alice;
        alice.server = Party::kAlice;
        alice.steps = {measure(Qubit::alice(1), MeasurementBasis::z()), measure(Qubit::alice(2), tilted(q.a)),
                       measure(Qubit::alice(3), pauli(rng.below(2) == 1))};
        return {alice, bob_pauli_readout(q.b == 0 ? TomoBasis::kZ1Z2Z3 : TomoBasis::kX1X2Z3), plan};
    }
    Command bob;
    bob.server = Party::kBob;
    bob.steps = {measure(Qubit::bob(1), pauli(rng.below(2) == 1)), measure(Qubit::bob(2), tilted(q.b)),
                 measure(Qubit::bob(3), MeasurementBasis::z())};
    return {alice_pauli_readout(q.a == 0 ? TomoBasis::kZ1Z2Z3 : TomoBasis::kZ1X2X3), bob, plan};
}

RoundCommands commands_for(SubProtocol sub, Rng &rng) {
    RoundPlan plan;
    plan.sub = sub;
    switch (sub) {
        case SubProtocol::kComputation:
            break;
        case SubProtocol::kStateTomo:
            plan.tomo = rng.below(2) == 0 ? TomoBasis::kX1X2Z3 : TomoBasis::kZ1Z2Z3;
            break;
        case SubProtocol::kProcessTomo:
            plan.tomo = rng.below(2) == 0 ? TomoBasis::kZ1X2X3 : TomoBasis::kZ1Z2Z3;
            break;
        case SubProtocol::kChshTest: {
            ChshQuestion q;
            q.orientation = rng.below(2) == 0 ? ChshOrientation::kAliceRotated : ChshOrientation::kBobRotated;
            q.a = static_cast<int>(rng.below(2));
            q.b = static_cast<int>(rng.below(2));
            plan.chsh = q;
            break;
        }
    }
    return commands_for_plan(plan, rng);
}

std::string ServerStrategy::str() const {
    switch (deviation) {
        case Deviation::kHonest:
            return "honest";
        case Deviation::kFlipFirstReport:
            return "flip-first-report";
        case Deviation::kMeasureX3InsteadOfZ3:
            return "measure-x3";
        case Deviation::kBellControlInZ:
            return "bell-control-z";
        case Deviation::kFirstQubitBasisSwap:
            return "first-qubit-swap";
        case Deviation::kAngleOffset:
            break;
    }
    std::ostringstream out;
    out.precision(17);
    out << "angle-offset(" << angle_offset << ")";
    return out.str();
}

std::string AuditEntry::str() const { return std::string(1, tag(actor)) + ":" + operation + (allowed ? "" : "!"); }

Referee::Referee(JointRegister reg, NoiseModel noise, BranchSource &branches)
    : reg_(std::move(reg)), noise_(noise), branches_(&branches) {}

bool Referee::audit_ok() const {
    return std::all_of(log_.begin(), log_.end(), [](const AuditEntry &e) { return e.allowed; });
}

void Referee::check(Party actor, const std::string &op, std::initializer_list<Qubit> touched) {
    bool allowed = true;
    for (const auto &q : touched) {
        allowed = allowed && reg_.ownership.owns(actor, q);
    }
    log_.push_back(AuditEntry{actor, op, allowed});
    if (!allowed) {
        throw AuditFailure(std::string("server ") + tag(actor) + " touched a qubit it does not own: " + op);
    }
}

void QubitPort::apply(const Gate &gate) {
    if (gate.control) {
        referee_->check(server_, gate.str(), {*gate.control, gate.target});
    } else {
        referee_->check(server_, gate.str(), {gate.target});
    }
    referee_->reg_.state.apply(gate);
}

Outcome QubitPort::measure(const Qubit &q, const MeasurementBasis &basis) {
    referee_->check(server_, "M(" + q.str() + ")", {q});
    return referee_->reg_.state.measure(q, effective_basis(basis, server_, referee_->noise_), *referee_->branches_);
}

bool QubitPort::project_parity(const Qubit &q1, const Qubit &q2) {
    referee_->check(server_, "P(" + q1.str() + "," + q2.str() + ")", {q1, q2});
    return referee_->reg_.state.project_parity(q1, q2, *referee_->branches_);
}

ServerReport server_execute(const Command &cmd, const ServerStrategy &strategy, QubitPort &port) {
    ServerReport report;
    if (cmd.parity && !port.project_parity(cmd.parity->first, cmd.parity->second)) {
        report.parity_ok = false;
        return report;
    }
    for (const auto &step : cmd.steps) {
        MeasurementBasis basis = step.basis;
        const auto kind = basis.kind();
        switch (strategy.deviation) {
            case Deviation::kMeasureX3InsteadOfZ3:
                if (step.qubit.index == 3 && kind == MeasurementBasis::Kind::kPauliZ) {
                    basis = MeasurementBasis::x();
                }
                break;
            case Deviation::kBellControlInZ: {
                bool is_control = std::any_of(step.gates.begin(), step.gates.end(), [&](const Gate &g) {
                    return g.kind == GateKind::kCnot && g.control == step.qubit;
                });
                if (is_control && kind == MeasurementBasis::Kind::kPauliX) {
                    basis = MeasurementBasis::z();
                }
                break;
            }
            case Deviation::kFirstQubitBasisSwap:
                if (step.qubit.index == 1 && kind == MeasurementBasis::Kind::kPauliZ) {
                    basis = MeasurementBasis::x();
                } else if (step.qubit.index == 1 && kind == MeasurementBasis::Kind::kPauliX) {
                    basis = MeasurementBasis::z();
                }
                break;
            case Deviation::kAngleOffset:
                basis = MeasurementBasis::angle(basis.theta() + strategy.angle_offset);
                break;
            case Deviation::kHonest:
            case Deviation::kFlipFirstReport:
                break;
        }
        for (const auto &g : step.gates) {
            port.apply(g);
        }
        report.outcomes.push_back(port.measure(step.qubit, basis));
    }
    if (strategy.deviation == Deviation::kFlipFirstReport && !report.outcomes.empty()) {
        report.outcomes[0] = -report.outcomes[0];
    }
    return report;
}

void RoundConfig::validate() const {
    if (!forced && !(eta > 0.0 && eta < 1.0)) {
        throw std::invalid_argument("eta must lie in (0, 1)");
    }
    if (max_attempts < 1) {
        throw std::invalid_argument("max_attempts must be positive");
    }
    noise.validate();
}

RoundTranscript execute_round(uint64_t round_index, const RoundCommands &cmds, const ServerStrategy &alice,
                              const ServerStrategy &bob, const NoiseModel &noise, Rng &rng) {
    RoundTranscript t;
    t.round_index = round_index;
    t.plan = cmds.plan;
    t.alice_command = cmds.alice;
    t.bob_command = cmds.bob;

    Referee referee(distribute_pairs(noise, rng), noise, rng);
    auto alice_port = referee.port(Party::kAlice);
    auto ra = server_execute(cmds.alice, alice, alice_port);
    if (cmds.alice.parity) {
        t.parity_success = ra.parity_ok;
    }
    if (ra.parity_ok) {
        t.alice_outcomes = std::move(ra.outcomes);
        auto bob_port = referee.port(Party::kBob);
        t.bob_outcomes = server_execute(cmds.bob, bob, bob_port).outcomes;
    }
    t.audit_ok = referee.audit_ok();
    for (const auto &e : referee.audit_log()) {
        t.audit_log.push_back(e.str());
    }
    return t;
}

RoundTranscript run_round(uint64_t round_index, const RoundConfig &config, Rng &rng) {
    config.validate();
    SubProtocol sub = config.forced ? *config.forced : sample_subprotocol(config.eta, rng);
    auto cmds = commands_for(sub, rng);
    for (int attempt = 1; attempt <= config.max_attempts; attempt++) {
        auto t = execute_round(round_index, cmds, config.alice, config.bob, config.noise, rng);
        t.attempts = attempt;
        if (t.parity_success.value_or(true)) {
            return t;
        }
    }
    throw std::runtime_error("post-selection failed " + std::to_string(config.max_attempts) + " times in a row");
}

}  // namespace bqc
