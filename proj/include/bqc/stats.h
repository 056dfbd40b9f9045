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

#ifndef BQC_STATS_H
#define BQC_STATS_H

#include <cstdint>
#include <vector>

namespace bqc {

/// sqrt(p (1 - p) / n); zero when n == 0.
double binomial_stderr(double p, int64_t n);

struct ChiSquareResult {
    double statistic = 0.0;
    int dof = 0;
    /// Upper-tail probability; 1 when the table has no degrees of freedom.
    double p_value = 1.0;
};

/// Pearson test of independence on a rows x columns table of counts.
/// Empty rows and columns are dropped before counting degrees of freedom.
ChiSquareResult chi_square_independence(const std::vector<std::vector<double>> &table);

}  // namespace bqc

#endif
