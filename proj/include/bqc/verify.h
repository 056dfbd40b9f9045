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

#ifndef BQC_VERIFY_H
#define BQC_VERIFY_H

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "bqc/parties.h"
#include "bqc/qsim.h"

namespace bqc {

/// Optimal quantum winning probability of the CHSH game, cos^2(pi/8).
inline const double kOmegaStar = std::pow(std::cos(std::numbers::pi / 8), 2);

/// (1 / (2 sqrt 2)) sqrt(ln n / n). Requires n >= 2.
double chsh_threshold(int64_t n);

/// Mergeable CHSH win counter.
struct ChshTally {
    int64_t n = 0;
    int64_t wins = 0;

    void add(bool won) {
        n++;
        wins += won ? 1 : 0;
    }
    ChshTally &merge(const ChshTally &other);
    double win_rate() const;
    double std_error() const;
    /// Threshold for this tally's n.
    double epsilon() const { return chsh_threshold(n); }
    /// omega* minus the observed win rate.
    double estimated_epsilon() const { return kOmegaStar - win_rate(); }
    /// Smallest accepted win count, ceil((omega* - epsilon) n).
    int64_t required_wins() const;
};

enum class Decision { kAccept, kReject };
enum class RejectCause { kClean, kChshBelowThreshold, kStabilizerMismatch };

struct Verdict {
    Decision decision = Decision::kAccept;
    RejectCause cause = RejectCause::kClean;
    /// First failing round for kStabilizerMismatch.
    std::optional<uint64_t> round_index;

    bool accepted() const { return decision == Decision::kAccept; }
    bool operator==(const Verdict &) const = default;
};

std::string to_string(Decision d);
std::string to_string(RejectCause c);

/// Reject iff wins < (omega* - epsilon) n.
Verdict chsh_verdict(const ChshTally &tally);

/// Win condition a.b == M xor N with outcome bits +1 -> 0, -1 -> 1.
bool chsh_round_won(const ChshQuestion &q, Outcome alice, Outcome bob);
/// CHSH result of a ChshTest transcript, read off the shared pair.
bool chsh_round_won(const RoundTranscript &t);

/// Correlator <(cos a Z + sin a X) (x) (cos b Z + sin b X)> via Pauli expectations.
double tilted_correlator(const StateVector &state, const Qubit &qa, double theta_a, const Qubit &qb, double theta_b);

/// Exact CHSH winning probability averaged over the four questions, for
/// players measuring the pair (qa, qb) of `state` with the given device offsets.
double chsh_win_probability(const StateVector &state, const Qubit &qa, const Qubit &qb, ChshOrientation orientation,
                            double alice_offset = 0.0, double bob_offset = 0.0);

/// Product constraint on the tested server's outcomes: the product of the
/// outcomes at `positions` must equal `expected`.
struct ParityCheck {
    std::vector<int> positions;
    Outcome expected;
    bool operator==(const ParityCheck &) const = default;
};

struct SyndromeExpectation {
    SubProtocol sub = SubProtocol::kStateTomo;
    TomoBasis basis = TomoBasis::kZ1Z2Z3;
    Party tested = Party::kBob;
    std::vector<ParityCheck> checks;
};

/// One row of the process-tomography sign table: Alice's stabilizer `pauli`
/// on `alice_positions` equals sign times the product of Bob's outcomes at
/// `bob_positions`.
struct SignRule {
    Pauli pauli;
    std::vector<int> alice_positions;
    std::vector<int> bob_positions;
    int sign;
    bool operator==(const SignRule &) const = default;
};

/// Generated from the simulator (see generate_process_sign_table) and
/// frozen here. Rows: Z1, X2X3, Z2Z3.
const std::vector<SignRule> &process_sign_table();
/// Rebuilds the table by forcing every outcome of an honest Computation-B
/// on ideal pairs and reading Alice's stabilizers off the post-state.
std::vector<SignRule> generate_process_sign_table();

/// Predicted syndromes for a tomography round given the steering server's
/// reported outcomes (Alice's for StateTomo, Bob's for ProcessTomo).
SyndromeExpectation expected_syndromes(SubProtocol sub, TomoBasis basis, std::span<const Outcome> steering);

bool check_round(const RoundTranscript &t, const SyndromeExpectation &expectation);
/// Derives the expectation from the transcript itself.
bool check_round(const RoundTranscript &t);

struct BasisTally {
    int64_t rounds = 0;
    int64_t passes = 0;
    void add(bool pass) {
        rounds++;
        passes += pass ? 1 : 0;
    }
    double pass_rate() const { return rounds ? static_cast<double>(passes) / rounds : 0.0; }
    double std_error() const;
};

/// Ideal (noise-free) probability that a tomography round passes, for the
/// given strategies, by exact enumeration of every measurement branch.
double ideal_pass_probability(SubProtocol sub, TomoBasis basis, const ServerStrategy &alice,
                              const ServerStrategy &bob);

struct FidelityBounds {
    double lower;
    double upper;
};

/// F_zz + F_xx - 1 <= F_process <= min(F_zz, F_xx), lower clamped at 0.
FidelityBounds hofmann_bounds(double f_zz, double f_xx);

enum class TruthTableBasis { kZ, kX };
/// Input index 2 c + t (control bit c, target bit t) to ideal output index.
std::array<int, 4> cnot_truth_table(TruthTableBasis basis);

/// counts[input][output]; weights need not be integers.
using TruthTableCounts = std::array<std::array<double, 4>, 4>;
double truth_table_fidelity(const TruthTableCounts &counts, const std::array<int, 4> &ideal);

/// Pauli error after an ideal CNOT: probs[4 * pc + pt] with I, X, Y, Z order
/// on control (pc) and target (pt).
struct PauliChannel2 {
    std::array<double, 16> probs{};
    void validate() const;
};

PauliChannel2 depolarizing_pair(double rate);

/// Exact output distribution of the noisy CNOT for the four basis inputs.
TruthTableCounts simulate_cnot_truth_table(const PauliChannel2 &channel, TruthTableBasis basis);

}  // namespace bqc

#endif
