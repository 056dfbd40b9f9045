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

#include "bqc/resources.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bqc {

bool OwnershipMap::owns(Party server, const Qubit &q) const {
    for (const auto &mine : qubits_of(server)) {
        if (mine == q) {
            return true;
        }
    }
    return false;
}

const std::array<Qubit, kNumPairs> &OwnershipMap::qubits_of(Party server) const {
    if (server == Party::kAlice) {
        return alice;
    }
    if (server == Party::kBob) {
        return bob;
    }
    throw std::invalid_argument("only Alice and Bob own qubits");
}

std::vector<Qubit> OwnershipMap::register_labels() const {
    std::vector<Qubit> labels(alice.begin(), alice.end());
    labels.insert(labels.end(), bob.begin(), bob.end());
    return labels;
}

void NoiseModel::validate() const {
    if (!(werner_p >= 0.0 && werner_p <= 1.0)) {
        throw std::invalid_argument("werner_p must lie in [0, 1]");
    }
    for (double off : {alice_angle_offset, bob_angle_offset}) {
        if (!(off > -std::numbers::pi && off <= std::numbers::pi)) {
            throw std::invalid_argument("angle offsets must lie in (-pi, pi]");
        }
    }
}

double NoiseModel::offset_for(Party server) const {
    return server == Party::kAlice ? alice_angle_offset : server == Party::kBob ? bob_angle_offset : 0.0;
}

JointRegister distribute_pairs(const NoiseModel &noise, Rng &rng) {
    noise.validate();
    OwnershipMap own;
    StateVector state(own.register_labels());
    for (int i = 0; i < kNumPairs; i++) {
        state.apply(Gate::h(own.alice[i]));
        state.apply(Gate::cnot(own.alice[i], own.bob[i]));
        // Always draw, so the stream layout does not depend on werner_p.
        bool ideal = rng.bernoulli(noise.werner_p);
        uint64_t which = rng.below(3);
        if (!ideal) {
            static constexpr GateKind kPaulis[] = {GateKind::kX, GateKind::kY, GateKind::kZ};
            state.apply(Gate{kPaulis[which], own.bob[i], std::nullopt});
        }
    }
    return JointRegister{std::move(state), own};
}

MeasurementBasis effective_basis(const MeasurementBasis &basis, Party server, const NoiseModel &noise) {
    return MeasurementBasis::angle(basis.theta() + noise.offset_for(server));
}

double hwp_degrees_to_bloch_radians(double hwp_degrees) {
    return 4.0 * hwp_degrees * std::numbers::pi / 180.0;
}

}  // namespace bqc
