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

#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>
#include <stdexcept>

namespace bqc {

double binomial_stderr(double p, int64_t n) {
    if (n <= 0) {
        return 0.0;
    }
    return std::sqrt(p * (1.0 - p) / static_cast<double>(n));
}

ChiSquareResult chi_square_independence(const std::vector<std::vector<double>> &table) {
    std::vector<double> rows;
    std::vector<double> cols;
    size_t width = table.empty() ? 0 : table[0].size();
    for (const auto &row : table) {
        if (row.size() != width) {
            throw std::invalid_argument("ragged contingency table");
        }
    }
    std::vector<size_t> keep_rows;
    std::vector<size_t> keep_cols;
    for (size_t r = 0; r < table.size(); r++) {
        double s = 0;
        for (double v : table[r]) {
            if (v < 0) {
                throw std::invalid_argument("negative count");
            }
            s += v;
        }
        if (s > 0) {
            keep_rows.push_back(r);
            rows.push_back(s);
        }
    }
    for (size_t c = 0; c < width; c++) {
        double s = 0;
        for (const auto &row : table) {
            s += row[c];
        }
        if (s > 0) {
            keep_cols.push_back(c);
            cols.push_back(s);
        }
    }
    ChiSquareResult res;
    if (keep_rows.size() < 2 || keep_cols.size() < 2) {
        return res;
    }
    double total = 0;
    for (double r : rows) {
        total += r;
    }
    for (size_t i = 0; i < keep_rows.size(); i++) {
        for (size_t j = 0; j < keep_cols.size(); j++) {
            double expected = rows[i] * cols[j] / total;
            double d = table[keep_rows[i]][keep_cols[j]] - expected;
            res.statistic += d * d / expected;
        }
    }
    res.dof = static_cast<int>((keep_rows.size() - 1) * (keep_cols.size() - 1));
    boost::math::chi_squared dist(res.dof);
    res.p_value = boost::math::cdf(boost::math::complement(dist, res.statistic));
    return res;
}

}  // namespace bqc
