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

#ifndef BQC_QSIM_H
#define BQC_QSIM_H

#include <complex>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "bqc/rng.h"

namespace bqc {

enum class Party { kAlice, kBob, kAux };

/// Logical qubit identifier: owner tag plus index. Alice's second qubit is
/// "2A", Bob's third "3B", free-standing register qubits "q0", "q1", ...
struct Qubit {
    Party owner = Party::kAux;
    int index = 0;

    static constexpr Qubit alice(int i) { return {Party::kAlice, i}; }
    static constexpr Qubit bob(int i) { return {Party::kBob, i}; }
    static constexpr Qubit aux(int i) { return {Party::kAux, i}; }

    std::string str() const;
    static Qubit parse(const std::string &text);

    auto operator<=>(const Qubit &) const = default;
};

class SimError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Raised when a branch source picks an outcome whose probability is zero.
class ZeroProbabilityBranch : public SimError {
   public:
    using SimError::SimError;
};

/// Measurement basis in the X-Z plane of the Bloch sphere. PauliZ and
/// PauliX are the angles 0 and pi/2 of the observable cos(t) Z + sin(t) X.
class MeasurementBasis {
   public:
    enum class Kind { kPauliZ, kPauliX, kBlochAngle };

    static MeasurementBasis z() { return MeasurementBasis(Kind::kPauliZ, 0.0); }
    static MeasurementBasis x() { return MeasurementBasis(Kind::kPauliX, 0.0); }
    static MeasurementBasis angle(double theta) { return MeasurementBasis(Kind::kBlochAngle, theta); }

    Kind kind() const { return kind_; }
    /// Angle from +Z towards +X, in radians.
    double theta() const;

    std::string str() const;
    static MeasurementBasis parse(const std::string &text);

    bool operator==(const MeasurementBasis &) const = default;

   private:
    MeasurementBasis(Kind kind, double theta) : kind_(kind), theta_(theta) {}
    Kind kind_;
    double theta_;
};

/// A reported measurement eigenvalue, always +1 or -1.
class Outcome {
   public:
    constexpr Outcome() = default;
    explicit Outcome(int value);
    static constexpr Outcome plus() { return Outcome(); }
    static Outcome minus() { return Outcome(-1); }
    static Outcome from_bit(bool bit) { return Outcome(bit ? -1 : 1); }

    int value() const { return value_; }
    /// +1 -> 0, -1 -> 1.
    bool bit() const { return value_ < 0; }
    Outcome operator-() const { return Outcome(-value_); }
    Outcome operator*(Outcome other) const { return Outcome(value_ * other.value_); }
    bool operator==(const Outcome &) const = default;

   private:
    int value_ = 1;
};

enum class GateKind { kH, kX, kY, kZ, kCnot };

struct Gate {
    GateKind kind;
    Qubit target;
    std::optional<Qubit> control;

    static Gate h(Qubit q) { return {GateKind::kH, q, std::nullopt}; }
    static Gate x(Qubit q) { return {GateKind::kX, q, std::nullopt}; }
    static Gate y(Qubit q) { return {GateKind::kY, q, std::nullopt}; }
    static Gate z(Qubit q) { return {GateKind::kZ, q, std::nullopt}; }
    static Gate cnot(Qubit control, Qubit target) { return {GateKind::kCnot, target, control}; }

    std::string str() const;
    bool operator==(const Gate &) const = default;
};

enum class Pauli { kI, kX, kY, kZ };
using PauliString = std::map<Qubit, Pauli>;

/// Dense state vector over a labeled register. Label i is bit i of the
/// amplitude index (little-endian in label order). Every public mutator
/// leaves the state normalized.
class StateVector {
   public:
    static constexpr size_t kMaxQubits = 12;
    static constexpr double kNormTolerance = 1e-9;

    /// |0...0> over the given labels.
    explicit StateVector(std::vector<Qubit> labels);

    const std::vector<Qubit> &labels() const { return labels_; }
    std::span<const std::complex<double>> amplitudes() const { return amps_; }
    size_t num_qubits() const { return labels_.size(); }
    bool has(const Qubit &q) const;
    size_t position(const Qubit &q) const;

    void apply(const Gate &gate);
    void apply_all(std::span<const Gate> gates);

    /// Samples an eigenvalue of cos(t) Z + sin(t) X on `q`, collapses.
    Outcome measure(const Qubit &q, const MeasurementBasis &basis, BranchSource &branches);
    /// Probability of observing `outcome` without touching the state.
    double probability(const Qubit &q, const MeasurementBasis &basis, Outcome outcome) const;

    /// Post-selects on equal computational-basis values of q1 and q2. On
    /// failure the state is left projected onto odd parity (renormalized when
    /// that has support) and must be discarded by the caller.
    bool project_parity(const Qubit &q1, const Qubit &q2, BranchSource &branches);
    double parity_probability(const Qubit &q1, const Qubit &q2) const;

    /// Exact <psi|P|psi>.
    double expectation(const PauliString &pauli) const;

    /// <this|other>; both registers must carry the same labels in the same order.
    std::complex<double> inner(const StateVector &other) const;
    double norm() const;

    /// Replaces the amplitudes (normalized on entry; used by tests and oracles).
    void set_amplitudes(std::vector<std::complex<double>> amps);

   private:
    void apply_single(size_t pos, const std::complex<double> (&m)[2][2]);
    void apply_pauli(const Qubit &q, Pauli p);
    void rotate_y(size_t pos, double theta);
    void renormalize();

    std::vector<Qubit> labels_;
    std::vector<std::complex<double>> amps_;
};

/// Branch source that replays a fixed script of decisions and accumulates
/// the probability of the path taken. Used for exact enumeration of all
/// measurement branches of a small protocol run.
class ScriptedBranches final : public BranchSource {
   public:
    /// Thrown when the run needs more decisions than the script holds.
    struct Exhausted {};

    explicit ScriptedBranches(std::vector<bool> script) : script_(std::move(script)) {}
    bool take_first(double p_first) override;
    double weight() const { return weight_; }

   private:
    std::vector<bool> script_;
    size_t next_ = 0;
    double weight_ = 1.0;
};

/// Calls `run` once per measurement-branch path with non-zero probability.
/// `run` consumes decisions from the source it receives and reads the path
/// probability from weight() once done.
void enumerate_branches(const std::function<void(ScriptedBranches &)> &run);

/// Convenience for the protocol code: builds a register in |0...0> and
/// checks label validity.
StateVector new_register(std::vector<Qubit> labels);

}  // namespace bqc

#endif
