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

#ifndef BQC_RESOURCES_H
#define BQC_RESOURCES_H

#include <array>
#include <vector>

#include "bqc/qsim.h"
#include "bqc/rng.h"

namespace bqc {

inline constexpr int kNumPairs = 3;

/// Fixed ownership of the shared register: pair i is (iA, iB), i = 1..3.
struct OwnershipMap {
    std::array<Qubit, kNumPairs> alice{Qubit::alice(1), Qubit::alice(2), Qubit::alice(3)};
    std::array<Qubit, kNumPairs> bob{Qubit::bob(1), Qubit::bob(2), Qubit::bob(3)};

    bool owns(Party server, const Qubit &q) const;
    const std::array<Qubit, kNumPairs> &qubits_of(Party server) const;
    /// Register order used by distribute_pairs: 1A 2A 3A 1B 2B 3B.
    std::vector<Qubit> register_labels() const;
};

/// Imperfections of the shared resource and the servers' devices.
struct NoiseModel {
    /// Probability that each pair is the ideal |Phi+>; otherwise a uniformly
    /// random X, Y or Z hits Bob's half.
    double werner_p = 1.0;
    /// Bloch-sphere angle (radians) added to every measurement of that server.
    double alice_angle_offset = 0.0;
    double bob_angle_offset = 0.0;

    /// Throws std::invalid_argument on out-of-range fields.
    void validate() const;
    double offset_for(Party server) const;
};

/// The referee's copy of the six shared qubits.
struct JointRegister {
    StateVector state;
    OwnershipMap ownership;
};

JointRegister distribute_pairs(const NoiseModel &noise, Rng &rng);

/// Basis the server's device actually measures when told to measure `basis`.
MeasurementBasis effective_basis(const MeasurementBasis &basis, Party server, const NoiseModel &noise);

/// A Bloch-sphere rotation of 4x the half-wave-plate misalignment.
double hwp_degrees_to_bloch_radians(double hwp_degrees);

}  // namespace bqc

#endif
