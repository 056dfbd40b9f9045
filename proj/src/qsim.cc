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

#include "bqc/qsim.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

namespace bqc {

namespace {

constexpr double kZeroBranch = 1e-14;

char party_tag(Party p) {
    switch (p) {
        case Party::kAlice:
            return 'A';
        case Party::kBob:
            return 'B';
        case Party::kAux:
            break;
    }
    return 'q';
}

std::string format_double(double v) {
    std::ostringstream out;
    out.precision(17);
    out << v;
    return out.str();
}

}  // namespace

std::string Qubit::str() const {
    if (owner == Party::kAux) {
        return "q" + std::to_string(index);
    }
    return std::to_string(index) + party_tag(owner);
}

Qubit Qubit::parse(const std::string &text) {
    if (text.size() >= 2 && text[0] == 'q') {
        return Qubit::aux(std::stoi(text.substr(1)));
    }
    if (text.size() >= 2 && (text.back() == 'A' || text.back() == 'B')) {
        int idx = std::stoi(text.substr(0, text.size() - 1));
        return text.back() == 'A' ? Qubit::alice(idx) : Qubit::bob(idx);
    }
    throw SimError("bad qubit label: " + text);
}

double MeasurementBasis::theta() const {
    switch (kind_) {
        case Kind::kPauliZ:
            return 0.0;
        case Kind::kPauliX:
            return std::numbers::pi / 2;
        case Kind::kBlochAngle:
            break;
    }
    return theta_;
}

std::string MeasurementBasis::str() const {
    switch (kind_) {
        case Kind::kPauliZ:
            return "Z";
        case Kind::kPauliX:
            return "X";
        case Kind::kBlochAngle:
            break;
    }
    return "R(" + format_double(theta_) + ")";
}

MeasurementBasis MeasurementBasis::parse(const std::string &text) {
    if (text == "Z") {
        return z();
    }
    if (text == "X") {
        return x();
    }
    if (text.size() > 3 && text.starts_with("R(") && text.back() == ')') {
        return angle(std::stod(text.substr(2, text.size() - 3)));
    }
    throw SimError("bad measurement basis: " + text);
}

Outcome::Outcome(int value) : value_(value) {
    if (value != 1 && value != -1) {
        throw SimError("outcome must be +1 or -1, got " + std::to_string(value));
    }
}

std::string Gate::str() const {
    switch (kind) {
        case GateKind::kH:
            return "H(" + target.str() + ")";
        case GateKind::kX:
            return "X(" + target.str() + ")";
        case GateKind::kY:
            return "Y(" + target.str() + ")";
        case GateKind::kZ:
            return "Z(" + target.str() + ")";
        case GateKind::kCnot:
            break;
    }
    return "CNOT(" + control->str() + "," + target.str() + ")";
}

StateVector::StateVector(std::vector<Qubit> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) {
        throw SimError("register needs at least one qubit");
    }
    if (labels_.size() > kMaxQubits) {
        throw SimError("register larger than " + std::to_string(kMaxQubits) + " qubits");
    }
    std::set<Qubit> seen(labels_.begin(), labels_.end());
    if (seen.size() != labels_.size()) {
        throw SimError("duplicate qubit label in register");
    }
    amps_.assign(size_t{1} << labels_.size(), {0.0, 0.0});
    amps_[0] = 1.0;
}

StateVector new_register(std::vector<Qubit> labels) { return StateVector(std::move(labels)); }

bool StateVector::has(const Qubit &q) const {
    return std::find(labels_.begin(), labels_.end(), q) != labels_.end();
}

size_t StateVector::position(const Qubit &q) const {
    auto it = std::find(labels_.begin(), labels_.end(), q);
    if (it == labels_.end()) {
        throw SimError("unknown qubit label: " + q.str());
    }
    return static_cast<size_t>(it - labels_.begin());
}

void StateVector::apply_single(size_t pos, const std::complex<double> (&m)[2][2]) {
    size_t bit = size_t{1} << pos;
    for (size_t i = 0; i < amps_.size(); i++) {
        if (i & bit) {
            continue;
        }
        auto a0 = amps_[i];
        auto a1 = amps_[i | bit];
        amps_[i] = m[0][0] * a0 + m[0][1] * a1;
        amps_[i | bit] = m[1][0] * a0 + m[1][1] * a1;
    }
}

void StateVector::apply_pauli(const Qubit &q, Pauli p) {
    using C = std::complex<double>;
    static constexpr C kX[2][2] = {{0, 1}, {1, 0}};
    static constexpr C kY[2][2] = {{0, C(0, -1)}, {C(0, 1), 0}};
    static constexpr C kZ[2][2] = {{1, 0}, {0, -1}};
    size_t pos = position(q);
    switch (p) {
        case Pauli::kI:
            return;
        case Pauli::kX:
            apply_single(pos, kX);
            return;
        case Pauli::kY:
            apply_single(pos, kY);
            return;
        case Pauli::kZ:
            apply_single(pos, kZ);
            return;
    }
}

void StateVector::apply(const Gate &gate) {
    using C = std::complex<double>;
    static const double r = std::numbers::sqrt2 / 2;
    static const C kH[2][2] = {{r, r}, {r, -r}};
    switch (gate.kind) {
        case GateKind::kH:
            apply_single(position(gate.target), kH);
            return;
        case GateKind::kX:
            apply_pauli(gate.target, Pauli::kX);
            return;
        case GateKind::kY:
            apply_pauli(gate.target, Pauli::kY);
            return;
        case GateKind::kZ:
            apply_pauli(gate.target, Pauli::kZ);
            return;
        case GateKind::kCnot:
            break;
    }
    if (!gate.control) {
        throw SimError("CNOT without control");
    }
    size_t c = position(*gate.control);
    size_t t = position(gate.target);
    if (c == t) {
        throw SimError("CNOT control equals target: " + gate.target.str());
    }
    size_t cbit = size_t{1} << c;
    size_t tbit = size_t{1} << t;
    for (size_t i = 0; i < amps_.size(); i++) {
        if ((i & cbit) && !(i & tbit)) {
            std::swap(amps_[i], amps_[i | tbit]);
        }
    }
}

void StateVector::apply_all(std::span<const Gate> gates) {
    for (const auto &g : gates) {
        apply(g);
    }
}

double StateVector::probability(const Qubit &q, const MeasurementBasis &basis, Outcome outcome) const {
    size_t bit = size_t{1} << position(q);
    double c = std::cos(basis.theta() / 2);
    double s = std::sin(basis.theta() / 2);
    // Eigenvectors of cos(t) Z + sin(t) X: +1 -> (c, s), -1 -> (-s, c).
    double u0 = outcome.value() > 0 ? c : -s;
    double u1 = outcome.value() > 0 ? s : c;
    double p = 0;
    for (size_t i = 0; i < amps_.size(); i++) {
        if (i & bit) {
            continue;
        }
        p += std::norm(u0 * amps_[i] + u1 * amps_[i | bit]);
    }
    return std::clamp(p, 0.0, 1.0);
}

Outcome StateVector::measure(const Qubit &q, const MeasurementBasis &basis, BranchSource &branches) {
    double p_plus = probability(q, basis, Outcome::plus());
    Outcome out = branches.take_first(p_plus) ? Outcome::plus() : Outcome::minus();
    double p_out = out.value() > 0 ? p_plus : 1.0 - p_plus;
    if (p_out < kZeroBranch) {
        throw ZeroProbabilityBranch("measurement of " + q.str() + " chose a zero-probability outcome");
    }
    size_t bit = size_t{1} << position(q);
    double c = std::cos(basis.theta() / 2);
    double s = std::sin(basis.theta() / 2);
    double u0 = out.value() > 0 ? c : -s;
    double u1 = out.value() > 0 ? s : c;
    for (size_t i = 0; i < amps_.size(); i++) {
        if (i & bit) {
            continue;
        }
        auto proj = u0 * amps_[i] + u1 * amps_[i | bit];
        amps_[i] = u0 * proj;
        amps_[i | bit] = u1 * proj;
    }
    renormalize();
    return out;
}

double StateVector::parity_probability(const Qubit &q1, const Qubit &q2) const {
    size_t b1 = size_t{1} << position(q1);
    size_t b2 = size_t{1} << position(q2);
    if (b1 == b2) {
        throw SimError("parity projection needs two distinct qubits");
    }
    double p = 0;
    for (size_t i = 0; i < amps_.size(); i++) {
        if (bool(i & b1) == bool(i & b2)) {
            p += std::norm(amps_[i]);
        }
    }
    return std::clamp(p, 0.0, 1.0);
}

bool StateVector::project_parity(const Qubit &q1, const Qubit &q2, BranchSource &branches) {
    double p_even = parity_probability(q1, q2);
    bool even = branches.take_first(p_even);
    double p_out = even ? p_even : 1.0 - p_even;
    if (p_out < kZeroBranch) {
        if (even) {
            throw ZeroProbabilityBranch("parity projection chose a zero-probability branch");
        }
        // Failed post-selection with nothing left; the caller discards it.
        return false;
    }
    size_t b1 = size_t{1} << position(q1);
    size_t b2 = size_t{1} << position(q2);
    for (size_t i = 0; i < amps_.size(); i++) {
        if ((bool(i & b1) == bool(i & b2)) != even) {
            amps_[i] = 0;
        }
    }
    renormalize();
    return even;
}

double StateVector::expectation(const PauliString &pauli) const {
    StateVector copy = *this;
    for (const auto &[q, p] : pauli) {
        copy.apply_pauli(q, p);
    }
    auto v = inner(copy);
    if (std::abs(v.imag()) > 1e-9) {
        throw SimError("non-real Pauli expectation");
    }
    return v.real();
}

std::complex<double> StateVector::inner(const StateVector &other) const {
    if (other.labels_ != labels_) {
        throw SimError("inner product over different registers");
    }
    std::complex<double> acc = 0;
    for (size_t i = 0; i < amps_.size(); i++) {
        acc += std::conj(amps_[i]) * other.amps_[i];
    }
    return acc;
}

double StateVector::norm() const {
    double acc = 0;
    for (const auto &a : amps_) {
        acc += std::norm(a);
    }
    return std::sqrt(acc);
}

void StateVector::renormalize() {
    double n = norm();
    for (auto &a : amps_) {
        a /= n;
    }
}

void StateVector::set_amplitudes(std::vector<std::complex<double>> amps) {
    if (amps.size() != amps_.size()) {
        throw SimError("amplitude vector has the wrong length");
    }
    amps_ = std::move(amps);
    if (norm() < kZeroBranch) {
        throw SimError("zero amplitude vector");
    }
    renormalize();
}

bool ScriptedBranches::take_first(double p_first) {
    if (next_ >= script_.size()) {
        throw Exhausted{};
    }
    bool first = script_[next_++];
    double p = first ? p_first : 1.0 - p_first;
    if (p < kZeroBranch) {
        throw ZeroProbabilityBranch("scripted branch has zero probability");
    }
    weight_ *= p;
    return first;
}

void enumerate_branches(const std::function<void(ScriptedBranches &)> &run) {
    std::vector<std::vector<bool>> pending{{}};
    while (!pending.empty()) {
        auto script = std::move(pending.back());
        pending.pop_back();
        ScriptedBranches branches(script);
        try {
            run(branches);
        } catch (const ScriptedBranches::Exhausted &) {
            script.push_back(false);
            pending.push_back(script);
            script.back() = true;
            pending.push_back(std::move(script));
        } catch (const ZeroProbabilityBranch &) {
            // Unreachable path.
        }
    }
}

}  // namespace bqc
