// Copyright 2026 The Consensus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CONSENSUS_RNG_H_
#define CONSENSUS_RNG_H_

#include <cstddef>
#include <cstdint>
#include <random>

namespace consensus {

struct RandomSeed {
  std::uint64_t value = 0;
};

// Splittable generator. Every stochastic stage takes its own child stream,
// derived from the parent seed and a stream id, so a stage can be replayed in
// isolation. Value conversions are done here rather than through the
// <random> distributions, whose outputs are implementation-defined.
class Rng {
 public:
  explicit Rng(RandomSeed seed);

  RandomSeed seed() const noexcept { return seed_; }

  // Child generator; depends only on this generator's seed and `stream`, not
  // on how many values have been drawn.
  Rng split(std::uint64_t stream) const;

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, 1).
  double uniform();
  // Uniform in [lo, hi).
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  // Uniform integer in [0, bound). bound must be > 0.
  std::size_t below(std::size_t bound);
  bool coin() { return (next() >> 63) != 0; }

 private:
  RandomSeed seed_;
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace consensus

#endif  // CONSENSUS_RNG_H_
