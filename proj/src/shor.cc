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

#include "bqc/shor.h"

#include <numeric>
#include <stdexcept>
#include <string>

namespace bqc::shor {

FactoringInstance validate_instance(int64_t n, int64_t a) {
    if (n < 2 || a < 2) {
        throw std::invalid_argument("need N >= 2 and a >= 2");
    }
    if (a >= n) {
        throw std::invalid_argument("need a < N");
    }
    int64_t g = std::gcd(a, n);
    if (g != 1) {
        throw std::invalid_argument("gcd(a, N) = " + std::to_string(g) + " is already a factor");
    }
    FactoringInstance inst;
    inst.n = n;
    inst.a = a;
    return inst;
}

int64_t mod_pow(int64_t base, int64_t exp, int64_t mod) {
    __int128 result = 1 % mod;
    __int128 b = base % mod;
    while (exp > 0) {
        if (exp & 1) {
            result = result * b % mod;
        }
        b = b * b % mod;
        exp >>= 1;
    }
    return static_cast<int64_t>(result);
}

int64_t classical_order(int64_t a, int64_t n) {
    if (std::gcd(a, n) != 1) {
        throw std::invalid_argument("a must be coprime to N");
    }
    int64_t x = a % n;
    for (int64_t r = 1; r <= n; r++) {
        if (x == 1 % n) {
            return r;
        }
        x = static_cast<int64_t>(static_cast<__int128>(x) * a % n);
    }
    throw std::logic_error("order search did not terminate");
}

std::optional<Factors> postprocess(const PeriodReadout &readout, const FactoringInstance &instance) {
    int64_t k = readout.measured_bit & 1;
    for (int bit : readout.redundant_bits) {
        k = (k << 1) | (bit & 1);
    }
    int width = 1 + static_cast<int>(readout.redundant_bits.size());
    if (k == 0) {
        return std::nullopt;
    }
    int64_t q = int64_t{1} << width;
    int64_t r = q / std::gcd(k, q);
    if (r % 2 != 0) {
        return std::nullopt;
    }
    int64_t half = mod_pow(instance.a, r / 2, instance.n);
    if (half == instance.n - 1) {
        return std::nullopt;
    }
    int64_t p1 = std::gcd(half - 1, instance.n);
    int64_t p2 = std::gcd(half + 1, instance.n);
    if (p1 <= 1 || p2 <= 1 || p1 * p2 != instance.n) {
        return std::nullopt;
    }
    return Factors{std::min(p1, p2), std::max(p1, p2), r};
}

Circuit compiled_circuit() {
    Circuit c;
    Qubit q1 = Qubit::aux(1), q2 = Qubit::aux(2), q3 = Qubit::aux(3);
    c.qubits = {q1, q2, q3};
    // The first CNOT is what Alice's post-selection prepares; the second is
    // Bob's Bell-measurement CNOT.
    c.gates = {Gate::h(q1), Gate::cnot(q1, q2), Gate::cnot(q2, q3)};
    c.output = q2;
    return c;
}

int run_monolithic(BranchSource &branches) {
    auto c = compiled_circuit();
    StateVector s(c.qubits);
    s.apply_all(c.gates);
    return s.measure(c.output, c.output_basis, branches).bit() ? 1 : 0;
}

}  // namespace bqc::shor
