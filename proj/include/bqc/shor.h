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

#ifndef BQC_SHOR_H
#define BQC_SHOR_H

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bqc/qsim.h"
#include "bqc/rng.h"

namespace bqc::shor {

struct FactoringInstance {
    int64_t n = 15;
    int64_t a = 11;
    /// Output-register width: the measured qubit plus the redundant |0>.
    int bits = 2;
};

/// Checks 1 < a < N and gcd(a, N) == 1. Throws std::invalid_argument; when a
/// shares a factor with N the message carries that factor.
FactoringInstance validate_instance(int64_t n, int64_t a);

/// Smallest r > 0 with a^r = 1 (mod N), by brute force.
int64_t classical_order(int64_t a, int64_t n);

int64_t mod_pow(int64_t base, int64_t exp, int64_t mod);

struct PeriodReadout {
    int measured_bit = 0;
    /// Known constants of the compiled circuit, never measured.
    std::vector<int> redundant_bits{0};
};

struct Factors {
    int64_t p;
    int64_t q;
    /// Period implied by the readout.
    int64_t period;
    bool operator==(const Factors &) const = default;
};

/// Readout to factors. The measured bit is the most significant bit of the
/// phase numerator k; k == 0 or an unusable period yields nullopt.
std::optional<Factors> postprocess(const PeriodReadout &readout, const FactoringInstance &instance);

/// The simplified N = 15, a = 11 circuit over q1, q2, q3.
struct Circuit {
    std::vector<Qubit> qubits;
    std::vector<Gate> gates;
    Qubit output;
    MeasurementBasis output_basis = MeasurementBasis::x();
};

Circuit compiled_circuit();

/// Runs the compiled circuit on one register and returns the output bit
/// (X outcome +1 -> 0, -1 -> 1).
int run_monolithic(BranchSource &branches);

}  // namespace bqc::shor

#endif
