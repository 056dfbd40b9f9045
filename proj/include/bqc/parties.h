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

#ifndef BQC_PARTIES_H
#define BQC_PARTIES_H

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "bqc/qsim.h"
#include "bqc/resources.h"
#include "bqc/rng.h"

namespace bqc {

enum class SubProtocol { kComputation, kChshTest, kStateTomo, kProcessTomo };
inline constexpr SubProtocol kAllSubProtocols[] = {SubProtocol::kComputation, SubProtocol::kChshTest,
                                                   SubProtocol::kStateTomo, SubProtocol::kProcessTomo};

std::string to_string(SubProtocol sub);
SubProtocol parse_subprotocol(const std::string &text);

/// Draws Computation with probability eta and each test with (1 - eta) / 3.
SubProtocol sample_subprotocol(double eta, Rng &rng);

/// Which server measures the tilted (Z +- X)/sqrt(2) observables.
enum class ChshOrientation { kAliceRotated, kBobRotated };

struct ChshQuestion {
    int a = 0;  // Alice's question bit
    int b = 0;  // Bob's question bit
    ChshOrientation orientation = ChshOrientation::kAliceRotated;
    bool operator==(const ChshQuestion &) const = default;
};

/// Readout patterns of the stabilizer tests. Z1Z2Z3 is used by both
/// tomography protocols; the sub-protocol tells them apart.
enum class TomoBasis { kX1X2Z3, kZ1Z2Z3, kZ1X2X3 };
std::string to_string(TomoBasis basis);
TomoBasis parse_tomo_basis(const std::string &text);

/// The client's private bookkeeping for one round. Never sent to servers.
struct RoundPlan {
    SubProtocol sub = SubProtocol::kComputation;
    std::optional<ChshQuestion> chsh;
    std::optional<TomoBasis> tomo;
    bool operator==(const RoundPlan &) const = default;
};

/// Optional gates followed by a single-qubit measurement.
struct Instruction {
    Qubit qubit;
    std::vector<Gate> gates;
    MeasurementBasis basis = MeasurementBasis::z();
    bool operator==(const Instruction &) const = default;
};

/// Everything a server is told in one round.
struct Command {
    Party server = Party::kAlice;
    std::optional<std::pair<Qubit, Qubit>> parity;
    std::vector<Instruction> steps;

    /// e.g. "P(1A,2A);M(1A,X);M(2A,X);M(3A,Z)" or "M(1B,Z);CNOT(2B,3B)>M(2B,X);M(3B,Z)".
    std::string str() const;
    static Command parse(Party server, const std::string &text);
    bool operator==(const Command &) const = default;
};

/// Coarse shape of a command, as visible to the receiving server.
enum class CommandClass { kGate, kPauli, kRotated };
CommandClass classify(const Command &cmd);
std::string to_string(CommandClass cls);

/// Pair carrying the CHSH game in ChshTest rounds.
inline constexpr int kChshPair = 2;

Command computation_a();
Command computation_b();
/// Pauli readout of Alice's qubits for ProcessTomo (Z1X2X3 or Z1Z2Z3).
Command alice_pauli_readout(TomoBasis basis);
/// Pauli readout of Bob's qubits for StateTomo (X1X2Z3 or Z1Z2Z3).
Command bob_pauli_readout(TomoBasis basis);

struct RoundCommands {
    Command alice;
    Command bob;
    RoundPlan plan;
};

RoundCommands commands_for(SubProtocol sub, Rng &rng);
/// Deterministic commands for a fully specified plan. ChshTest plans draw
/// the rotated server's spectator bases from `rng`.
RoundCommands commands_for_plan(const RoundPlan &plan, Rng &rng);

enum class Deviation {
    kHonest,
    kFlipFirstReport,
    kMeasureX3InsteadOfZ3,
    kBellControlInZ,
    kFirstQubitBasisSwap,
    kAngleOffset,
};

struct ServerStrategy {
    Deviation deviation = Deviation::kHonest;
    /// Bloch radians, only read for kAngleOffset.
    double angle_offset = 0.0;

    static ServerStrategy honest() { return {}; }
    std::string str() const;
    bool operator==(const ServerStrategy &) const = default;
};

class AuditFailure : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

struct AuditEntry {
    Party actor;
    std::string operation;
    bool allowed;
    std::string str() const;
};

class Referee;

/// A server's only handle on the shared register. Every call is checked
/// against the ownership map and logged.
class QubitPort {
   public:
    Party server() const { return server_; }
    void apply(const Gate &gate);
    Outcome measure(const Qubit &q, const MeasurementBasis &basis);
    bool project_parity(const Qubit &q1, const Qubit &q2);

   private:
    friend class Referee;
    QubitPort(Referee &referee, Party server) : referee_(&referee), server_(server) {}
    Referee *referee_;
    Party server_;
};

/// Holds the joint register and executes server operations on it.
class Referee {
   public:
    Referee(JointRegister reg, NoiseModel noise, BranchSource &branches);

    QubitPort port(Party server) { return QubitPort(*this, server); }
    const StateVector &state() const { return reg_.state; }
    const std::vector<AuditEntry> &audit_log() const { return log_; }
    bool audit_ok() const;

   private:
    friend class QubitPort;
    void check(Party actor, const std::string &op, std::initializer_list<Qubit> touched);

    JointRegister reg_;
    NoiseModel noise_;
    BranchSource *branches_;
    std::vector<AuditEntry> log_;
};

struct ServerReport {
    std::vector<Outcome> outcomes;
    /// False when the command's parity post-selection failed.
    bool parity_ok = true;
};

/// Runs `cmd` on the server's own qubits according to its strategy.
ServerReport server_execute(const Command &cmd, const ServerStrategy &strategy, QubitPort &port);

struct RoundTranscript {
    uint64_t round_index = 0;
    /// Distributions consumed, including failed post-selections.
    int attempts = 1;
    RoundPlan plan;
    Command alice_command;
    Command bob_command;
    std::vector<Outcome> alice_outcomes;
    std::vector<Outcome> bob_outcomes;
    /// Set for rounds whose Alice command post-selects.
    std::optional<bool> parity_success;
    bool audit_ok = true;
    std::vector<std::string> audit_log;

    SubProtocol sub() const { return plan.sub; }
    bool operator==(const RoundTranscript &) const = default;
};

struct RoundConfig {
    double eta = 0.25;
    ServerStrategy alice;
    ServerStrategy bob;
    NoiseModel noise;
    /// Skip sub-protocol sampling and always run this one.
    std::optional<SubProtocol> forced;
    int max_attempts = 1000;

    void validate() const;
};

/// One attempt: fresh pairs, Alice's steps, then Bob's (skipped when Alice's
/// post-selection fails).
RoundTranscript execute_round(uint64_t round_index, const RoundCommands &cmds, const ServerStrategy &alice,
                              const ServerStrategy &bob, const NoiseModel &noise, Rng &rng);

/// Samples a sub-protocol and its commands, then repeats execute_round with
/// fresh pairs until Alice's post-selection succeeds.
RoundTranscript run_round(uint64_t round_index, const RoundConfig &config, Rng &rng);

}  // namespace bqc

#endif
