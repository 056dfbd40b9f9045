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

#ifndef BQC_RNG_H
#define BQC_RNG_H

#include <cstdint>
#include <random>

namespace bqc {

/// Source of binary branch decisions. Measurements and post-selections ask
/// it which branch happens, given the Born probability of the first one.
class BranchSource {
   public:
    virtual ~BranchSource() = default;
    virtual bool take_first(double p_first) = 0;
};

/// Seeded pseudo-random stream (mt19937_64). Per-round streams are derived
/// from (seed, round_index) so rounds can run in any order or in parallel
/// and still reproduce bit for bit.
class Rng final : public BranchSource {
   public:
    explicit Rng(uint64_t seed);
    static Rng for_round(uint64_t seed, uint64_t round_index);

    /// Uniform double in [0, 1) built from the top 53 bits.
    double uniform();
    bool bernoulli(double p) { return uniform() < p; }
    /// Uniform integer in [0, n).
    uint64_t below(uint64_t n);

    bool take_first(double p_first) override { return bernoulli(p_first); }

   private:
    std::mt19937_64 engine_;
};

uint64_t splitmix64(uint64_t x);

}  // namespace bqc

#endif
