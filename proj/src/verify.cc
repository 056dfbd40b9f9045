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

#include "bqc/verify.h"

#include <algorithm>
#include <stdexcept>

#include "bqc/stats.h"

namespace bqc {

double chsh_threshold(int64_t n) {
    if (n < 2) {
        throw std::invalid_argument("CHSH threshold needs n >= 2");
    }
    double nd = static_cast<double>(n);
    return std::sqrt(std::log(nd) / nd) / (2.0 * std::numbers::sqrt2);
}

ChshTally &ChshTally::merge(const ChshTally &other) {
    n += other.n;
    wins += other.wins;
    return *this;
}

double ChshTally::win_rate() const { return n ? static_cast<double>(wins) / static_cast<double>(n) : 0.0; }

double ChshTally::std_error() const { return binomial_stderr(win_rate(), n); }

int64_t ChshTally::required_wins() const {
    double need = (kOmegaStar - epsilon()) * static_cast<double>(n);
    return static_cast<int64_t>(std::ceil(need - 1e-9));
}

std::string to_string(Decision d) { return d == Decision::kAccept ? "accept" : "reject"; }

std::string to_string(RejectCause c) {
    switch (c) {
        case RejectCause::kClean:
            return "clean";
        case RejectCause::kChshBelowThreshold:
            return "chsh-below-threshold";
        case RejectCause::kStabilizerMismatch:
            return "stabilizer-mismatch";
    }
    return "?";
}

Verdict chsh_verdict(const ChshTally &tally) {
    if (tally.wins < 0 || tally.wins > tally.n) {
        throw std::invalid_argument("inconsistent CHSH tally");
    }
    if (tally.wins >= tally.required_wins()) {
        return Verdict{};
    }
    return Verdict{Decision::kReject, RejectCause::kChshBelowThreshold, std::nullopt};
}

bool chsh_round_won(const ChshQuestion &q, Outcome alice, Outcome bob) {
    return (q.a & q.b) == (alice.bit() ^ bob.bit());
}

bool chsh_round_won(const RoundTranscript &t) {
    if (t.sub() != SubProtocol::kChshTest || !t.plan.chsh) {
        throw std::invalid_argument("not a CHSH round");
    }
    size_t k = kChshPair - 1;
    if (t.alice_outcomes.size() <= k || t.bob_outcomes.size() <= k) {
        throw std::invalid_argument("CHSH transcript is missing outcomes");
    }
    return chsh_round_won(*t.plan.chsh, t.alice_outcomes[k], t.bob_outcomes[k]);
}

double tilted_correlator(const StateVector &state, const Qubit &qa, double theta_a, const Qubit &qb, double theta_b) {
    auto e = [&](Pauli pa, Pauli pb) { return state.expectation({{qa, pa}, {qb, pb}}); };
    double ca = std::cos(theta_a), sa = std::sin(theta_a);
    double cb = std::cos(theta_b), sb = std::sin(theta_b);
    return ca * cb * e(Pauli::kZ, Pauli::kZ) + ca * sb * e(Pauli::kZ, Pauli::kX) + sa * cb * e(Pauli::kX, Pauli::kZ) +
           sa * sb * e(Pauli::kX, Pauli::kX);
}

double chsh_win_probability(const StateVector &state, const Qubit &qa, const Qubit &qb, ChshOrientation orientation,
                            double alice_offset, double bob_offset) {
    const double pi = std::numbers::pi;
    double total = 0;
    for (int a = 0; a < 2; a++) {
        for (int b = 0; b < 2; b++) {
            double ta, tb;
            if (orientation == ChshOrientation::kAliceRotated) {
                ta = a ? -pi / 4 : pi / 4;
                tb = b ? pi / 2 : 0.0;
            } else {
                ta = a ? pi / 2 : 0.0;
                tb = b ? -pi / 4 : pi / 4;
            }
            double corr = tilted_correlator(state, qa, ta + alice_offset, qb, tb + bob_offset);
            total += (1.0 + ((a & b) ? -corr : corr)) / 2.0;
        }
    }
    return total / 4.0;
}

const std::vector<SignRule> &process_sign_table() {
    // Output of generate_process_sign_table(); checked by verify_test.
    static const std::vector<SignRule> table = {
        {Pauli::kZ, {0}, {0}, +1},
        {Pauli::kX, {1, 2}, {1}, +1},
        {Pauli::kZ, {1, 2}, {2}, +1},
    };
    return table;
}

std::vector<SignRule> generate_process_sign_table() {
    struct Candidate {
        Pauli pauli;
        std::vector<int> positions;
    };
    const std::vector<Candidate> candidates = {{Pauli::kZ, {0}}, {Pauli::kX, {1, 2}}, {Pauli::kZ, {1, 2}}};
    OwnershipMap own;

    // values[c][combo] = Alice's stabilizer value; bobs[combo] = Bob's outcomes.
    std::vector<std::array<int, 8>> values(candidates.size());
    std::array<std::array<int, 3>, 8> bobs{};
    for (int combo = 0; combo < 8; combo++) {
        Rng unused(0);
        ScriptedBranches script({!(combo & 1), !(combo & 2), !(combo & 4)});
        Referee referee(distribute_pairs(NoiseModel{}, unused), NoiseModel{}, script);
        auto port = referee.port(Party::kBob);
        auto report = server_execute(computation_b(), ServerStrategy::honest(), port);
        for (int i = 0; i < 3; i++) {
            bobs[combo][i] = report.outcomes[i].value();
        }
        for (size_t c = 0; c < candidates.size(); c++) {
            PauliString ps;
            for (int pos : candidates[c].positions) {
                ps[own.alice[pos]] = candidates[c].pauli;
            }
            double e = referee.state().expectation(ps);
            if (std::abs(std::abs(e) - 1.0) > 1e-9) {
                throw std::logic_error("Alice stabilizer is not deterministic after Computation-B");
            }
            values[c][combo] = e > 0 ? 1 : -1;
        }
    }

    std::vector<SignRule> table;
    for (size_t c = 0; c < candidates.size(); c++) {
        bool found = false;
        for (int mask = 0; mask < 8 && !found; mask++) {
            for (int sign : {1, -1}) {
                bool ok = true;
                for (int combo = 0; combo < 8 && ok; combo++) {
                    int prod = sign;
                    for (int i = 0; i < 3; i++) {
                        if (mask & (1 << i)) {
                            prod *= bobs[combo][i];
                        }
                    }
                    ok = prod == values[c][combo];
                }
                if (ok) {
                    std::vector<int> pos;
                    for (int i = 0; i < 3; i++) {
                        if (mask & (1 << i)) {
                            pos.push_back(i);
                        }
                    }
                    table.push_back({candidates[c].pauli, candidates[c].positions, pos, sign});
                    found = true;
                    break;
                }
            }
        }
        if (!found) {
            throw std::logic_error("no sign rule explains Alice's stabilizer");
        }
    }
    return table;
}

SyndromeExpectation expected_syndromes(SubProtocol sub, TomoBasis basis, std::span<const Outcome> steering) {
    if (steering.size() != 3) {
        throw std::invalid_argument("steering outcomes must be a triple");
    }
    SyndromeExpectation e;
    e.sub = sub;
    e.basis = basis;
    if (sub == SubProtocol::kStateTomo) {
        e.tested = Party::kBob;
        if (basis == TomoBasis::kX1X2Z3) {
            e.checks = {{{0, 1}, steering[0] * steering[1]}, {{2}, steering[2]}};
        } else if (basis == TomoBasis::kZ1Z2Z3) {
            e.checks = {{{0, 1}, Outcome::plus()}, {{2}, steering[2]}};
        } else {
            throw std::invalid_argument("state tomography has no basis " + to_string(basis));
        }
        return e;
    }
    if (sub != SubProtocol::kProcessTomo) {
        throw std::invalid_argument("syndromes exist only for tomography rounds");
    }
    if (basis == TomoBasis::kX1X2Z3) {
        throw std::invalid_argument("process tomography has no basis X1X2Z3");
    }
    e.tested = Party::kAlice;
    Pauli pair_pauli = basis == TomoBasis::kZ1X2X3 ? Pauli::kX : Pauli::kZ;
    for (const auto &rule : process_sign_table()) {
        bool single = rule.alice_positions.size() == 1;
        if (!single && rule.pauli != pair_pauli) {
            continue;
        }
        Outcome expect(rule.sign);
        for (int p : rule.bob_positions) {
            expect = expect * steering[p];
        }
        e.checks.push_back({rule.alice_positions, expect});
    }
    return e;
}

bool check_round(const RoundTranscript &t, const SyndromeExpectation &expectation) {
    const auto &tested = expectation.tested == Party::kBob ? t.bob_outcomes : t.alice_outcomes;
    if (tested.size() != 3) {
        throw std::invalid_argument("malformed tomography transcript");
    }
    for (const auto &check : expectation.checks) {
        Outcome prod;
        for (int p : check.positions) {
            prod = prod * tested.at(p);
        }
        if (prod != check.expected) {
            return false;
        }
    }
    return true;
}

bool check_round(const RoundTranscript &t) {
    if (!t.plan.tomo) {
        throw std::invalid_argument("tomography transcript without a basis");
    }
    const auto &steering = t.sub() == SubProtocol::kStateTomo ? t.alice_outcomes : t.bob_outcomes;
    if (steering.size() != 3) {
        throw std::invalid_argument("malformed tomography transcript");
    }
    return check_round(t, expected_syndromes(t.sub(), *t.plan.tomo, steering));
}

double BasisTally::std_error() const { return binomial_stderr(pass_rate(), rounds); }

double ideal_pass_probability(SubProtocol sub, TomoBasis basis, const ServerStrategy &alice,
                              const ServerStrategy &bob) {
    RoundPlan plan;
    plan.sub = sub;
    plan.tomo = basis;
    Rng unused(0);
    auto cmds = commands_for_plan(plan, unused);
    double kept = 0;
    double passed = 0;
    enumerate_branches([&](ScriptedBranches &branches) {
        Rng pairs_rng(0);
        Referee referee(distribute_pairs(NoiseModel{}, pairs_rng), NoiseModel{}, branches);
        auto alice_port = referee.port(Party::kAlice);
        auto ra = server_execute(cmds.alice, alice, alice_port);
        if (!ra.parity_ok) {
            return;
        }
        auto bob_port = referee.port(Party::kBob);
        auto rb = server_execute(cmds.bob, bob, bob_port);
        RoundTranscript t;
        t.plan = plan;
        t.alice_outcomes = ra.outcomes;
        t.bob_outcomes = rb.outcomes;
        kept += branches.weight();
        if (check_round(t)) {
            passed += branches.weight();
        }
    });
    return passed / kept;
}

FidelityBounds hofmann_bounds(double f_zz, double f_xx) {
    if (!(f_zz >= 0 && f_zz <= 1 && f_xx >= 0 && f_xx <= 1)) {
        throw std::invalid_argument("truth-table fidelities must lie in [0, 1]");
    }
    return {std::max(0.0, f_zz + f_xx - 1.0), std::min(f_zz, f_xx)};
}

std::array<int, 4> cnot_truth_table(TruthTableBasis basis) {
    std::array<int, 4> table{};
    for (int c = 0; c < 2; c++) {
        for (int t = 0; t < 2; t++) {
            // Z basis: the target picks up the control. X basis: the control
            // picks up the target (phase kickback).
            table[2 * c + t] = basis == TruthTableBasis::kZ ? 2 * c + (c ^ t) : 2 * (c ^ t) + t;
        }
    }
    return table;
}

double truth_table_fidelity(const TruthTableCounts &counts, const std::array<int, 4> &ideal) {
    double acc = 0;
    for (int in = 0; in < 4; in++) {
        double row = 0;
        for (double v : counts[in]) {
            if (v < 0) {
                throw std::invalid_argument("negative truth-table count");
            }
            row += v;
        }
        if (row <= 0) {
            throw std::invalid_argument("truth-table row " + std::to_string(in) + " is empty");
        }
        acc += counts[in][ideal[in]] / row;
    }
    return acc / 4.0;
}

void PauliChannel2::validate() const {
    double sum = 0;
    for (double p : probs) {
        if (p < 0) {
            throw std::invalid_argument("negative Pauli probability");
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw std::invalid_argument("Pauli probabilities must sum to 1");
    }
}

PauliChannel2 depolarizing_pair(double rate) {
    if (!(rate >= 0 && rate <= 1)) {
        throw std::invalid_argument("depolarizing rate must lie in [0, 1]");
    }
    std::array<double, 4> single = {1 - rate, rate / 3, rate / 3, rate / 3};
    PauliChannel2 ch;
    for (int i = 0; i < 4; i++) {
        for (int j = 0; j < 4; j++) {
            ch.probs[4 * i + j] = single[i] * single[j];
        }
    }
    return ch;
}

TruthTableCounts simulate_cnot_truth_table(const PauliChannel2 &channel, TruthTableBasis basis) {
    channel.validate();
    auto pauli = [](int k, Qubit q) {
        return k == 1 ? Gate::x(q) : k == 2 ? Gate::y(q) : Gate::z(q);
    };
    const Qubit control = Qubit::aux(0);
    const Qubit target = Qubit::aux(1);
    TruthTableCounts counts{};
    for (int c = 0; c < 2; c++) {
        for (int t = 0; t < 2; t++) {
            for (int k = 0; k < 16; k++) {
                if (channel.probs[k] == 0) {
                    continue;
                }
                StateVector s({control, target});
                if (c) s.apply(Gate::x(control));
                if (t) s.apply(Gate::x(target));
                if (basis == TruthTableBasis::kX) {
                    s.apply(Gate::h(control));
                    s.apply(Gate::h(target));
                }
                s.apply(Gate::cnot(control, target));
                if (k / 4) s.apply(pauli(k / 4, control));
                if (k % 4) s.apply(pauli(k % 4, target));
                if (basis == TruthTableBasis::kX) {
                    s.apply(Gate::h(control));
                    s.apply(Gate::h(target));
                }
                auto amps = s.amplitudes();
                for (int oc = 0; oc < 2; oc++) {
                    for (int ot = 0; ot < 2; ot++) {
                        // Register index is little-endian: control is bit 0.
                        counts[2 * c + t][2 * oc + ot] += channel.probs[k] * std::norm(amps[oc + 2 * ot]);
                    }
                }
            }
        }
    }
    return counts;
}

}  // namespace bqc
