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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "bqc/harness.h"

using namespace bqc;
using namespace bqc::shor;

TEST(ValidateInstance, examples) {
    auto inst = validate_instance(15, 11);
    EXPECT_EQ(inst.n, 15);
    EXPECT_EQ(inst.a, 11);
    EXPECT_NO_THROW(validate_instance(15, 14));
    EXPECT_THROW(validate_instance(15, 3), std::invalid_argument);
    EXPECT_THROW(validate_instance(15, 15), std::invalid_argument);
    EXPECT_THROW(validate_instance(15, 1), std::invalid_argument);
    EXPECT_THROW(validate_instance(1, 1), std::invalid_argument);
}

TEST(ValidateInstance, shared_factor_is_named) {
    try {
        validate_instance(15, 6);
        FAIL() << "expected a throw";
    } catch (const std::invalid_argument &e) {
        EXPECT_NE(std::string(e.what()).find('3'), std::string::npos) << e.what();
    }
}

TEST(ClassicalOrder, examples) {
    EXPECT_EQ(classical_order(11, 15), 2);
    EXPECT_EQ(classical_order(2, 15), 4);
    EXPECT_EQ(classical_order(14, 15), 2);
    EXPECT_EQ(classical_order(7, 15), 4);
}

TEST(ClassicalOrder, satisfies_definition) {
    for (int64_t n = 3; n < 60; n++) {
        for (int64_t a = 2; a < n; a++) {
            if (std::gcd(a, n) != 1) continue;
            int64_t r = classical_order(a, n);
            ASSERT_EQ(mod_pow(a, r, n), 1) << a << " " << n;
            for (int64_t s = 1; s < r; s++) {
                ASSERT_NE(mod_pow(a, s, n), 1) << a << " " << n;
            }
        }
    }
}

TEST(Postprocess, examples) {
    FactoringInstance inst;
    auto ok = postprocess(PeriodReadout{1, {0}}, inst);
    ASSERT_TRUE(ok.has_value());
    EXPECT_EQ(ok->p, 3);
    EXPECT_EQ(ok->q, 5);
    EXPECT_EQ(ok->period, 2);
    EXPECT_EQ(ok->p * ok->q, 15);
    EXPECT_EQ(ok->period, classical_order(11, 15));
    EXPECT_FALSE(postprocess(PeriodReadout{0, {0}}, inst).has_value());
}

TEST(CompiledCircuit, shape) {
    auto c = compiled_circuit();
    ASSERT_EQ(c.qubits.size(), 3u);
    ASSERT_EQ(c.gates.size(), 3u);
    EXPECT_EQ(c.gates[0], Gate::h(c.qubits[0]));
    EXPECT_EQ(c.gates[1], Gate::cnot(c.qubits[0], c.qubits[1]));
    EXPECT_EQ(c.gates[2], Gate::cnot(c.qubits[1], c.qubits[2]));
    EXPECT_EQ(c.output_basis, MeasurementBasis::x());
}

TEST(CompiledCircuit, exact_output_distribution) {
    double p1 = 0;
    enumerate_branches([&](ScriptedBranches &b) { p1 += run_monolithic(b) * b.weight(); });
    EXPECT_NEAR(p1, 0.5, 1e-12);
}

TEST(CompiledCircuit, sampled_output_distribution) {
    Rng rng(1);
    int ones = 0;
    const int n = 10000;
    for (int i = 0; i < n; i++) {
        ones += run_monolithic(rng);
    }
    EXPECT_NEAR(ones / double(n), 0.5, 0.02);
}

TEST(CompiledCircuit, distributed_matches_monolithic) {
    Rng mono(2);
    const int n = 10000;
    int mono_ones = 0;
    for (int i = 0; i < n; i++) {
        mono_ones += run_monolithic(mono);
    }
    for (auto mode : {ComputationMode::kFrameCorrect, ComputationMode::kPostselect}) {
        RoundConfig cfg;
        cfg.forced = SubProtocol::kComputation;
        int used = 0, ones = 0;
        for (uint64_t i = 0; used < n; i++) {
            auto rng = Rng::for_round(3, i);
            auto bit = computation_output_bit(run_round(i, cfg, rng), mode);
            if (!bit) continue;
            used++;
            ones += *bit;
            if (*bit == 1) {
                auto f = postprocess(PeriodReadout{1, {0}}, FactoringInstance{});
                ASSERT_EQ(f, (Factors{3, 5, 2}));
            }
        }
        double p = (ones + mono_ones) / (2.0 * n);
        double sigma = std::sqrt(2 * p * (1 - p) / n);
        EXPECT_LE(std::abs(ones - mono_ones) / double(n), 3 * sigma);
    }
}
