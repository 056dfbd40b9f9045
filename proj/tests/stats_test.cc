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

#include "bqc/stats.h"

#include <gtest/gtest.h>

#include <cmath>

using namespace bqc;

TEST(BinomialStderr, examples) {
    EXPECT_DOUBLE_EQ(binomial_stderr(0.5, 100), 0.05);
    EXPECT_DOUBLE_EQ(binomial_stderr(0.0, 100), 0.0);
    EXPECT_DOUBLE_EQ(binomial_stderr(0.3, 0), 0.0);
}

TEST(ChiSquare, two_by_two) {
    // Expected counts 12 18 28 42, each cell off by 2.
    auto r = chi_square_independence({{10, 20}, {30, 40}});
    double stat = 4.0 / 12 + 4.0 / 18 + 4.0 / 28 + 4.0 / 42;
    EXPECT_NEAR(r.statistic, stat, 1e-12);
    EXPECT_EQ(r.dof, 1);
    // One degree of freedom: upper tail is erfc(sqrt(x / 2)).
    EXPECT_NEAR(r.p_value, std::erfc(std::sqrt(stat / 2)), 1e-12);
}

TEST(ChiSquare, two_degrees_of_freedom) {
    auto r = chi_square_independence({{10, 20, 30}, {30, 20, 10}});
    EXPECT_EQ(r.dof, 2);
    // Two degrees of freedom: upper tail is exp(-x / 2).
    EXPECT_NEAR(r.p_value, std::exp(-r.statistic / 2), 1e-12);
}

TEST(ChiSquare, empty_rows_and_columns_are_dropped) {
    auto r = chi_square_independence({{10, 0, 20}, {0, 0, 0}, {30, 0, 40}});
    EXPECT_EQ(r.dof, 1);
    EXPECT_NEAR(r.statistic, chi_square_independence({{10, 20}, {30, 40}}).statistic, 1e-12);
}

TEST(ChiSquare, identical_rows_are_independent) {
    auto r = chi_square_independence({{5, 7, 9}, {5, 7, 9}});
    EXPECT_NEAR(r.statistic, 0.0, 1e-12);
    EXPECT_NEAR(r.p_value, 1.0, 1e-12);
}

TEST(ChiSquare, degenerate_table) {
    auto r = chi_square_independence({{5, 7}});
    EXPECT_EQ(r.dof, 0);
    EXPECT_EQ(r.p_value, 1.0);
}
