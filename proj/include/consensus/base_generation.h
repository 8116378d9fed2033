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

#ifndef CONSENSUS_BASE_GENERATION_H_
#define CONSENSUS_BASE_GENERATION_H_

#include <string_view>
#include <vector>

#include "consensus/core.h"
#include "consensus/rng.h"

namespace consensus {

enum class Normalization { kNone, kMinMax, kZScore };

Normalization parse_normalization(std::string_view name);
std::string_view to_string(Normalization n);

// Per-feature affine map x -> (x - offset) / scale.
struct NormalizationParams {
  Normalization kind = Normalization::kNone;
  std::vector<double> offset;
  std::vector<double> scale;

  // Fitted on `data`. Constant columns get scale 1.
  static NormalizationParams fit(const DataMatrix& data, Normalization kind);
  DataMatrix apply(const DataMatrix& data) const;
  std::vector<double> apply(std::span<const double> x) const;
};

// Replaces each listed column by one indicator column per distinct value.
DataMatrix one_hot_encode(const DataMatrix& data, std::span<const std::size_t> columns);

struct StratificationPlan {
  std::size_t bins_per_feature = 4;
  std::size_t sample_size = 0;
  // Columns that define the strata; empty selects the first min(3, d).
  std::vector<std::size_t> features;
  // Strata smaller than this are merged into the nearest larger stratum.
  std::size_t min_stratum_size = 2;
};

struct StratifiedSample {
  DataMatrix data;
  std::vector<std::size_t> rows;  // source row of each sampled object
};

// Equal-width bins per stratum feature, proportional allocation with
// largest-remainder rounding, uniform sampling without replacement inside
// each stratum.
StratifiedSample stratified_sample(const DataMatrix& data, const StratificationPlan& plan, Rng& rng);

// Stratum id of every row after sparse-stratum merging, in first-appearance
// order; exposed for testing the allocation.
std::vector<std::size_t> assign_strata(const DataMatrix& data, const StratificationPlan& plan);

// Largest-remainder apportionment of `total` over groups of the given sizes.
std::vector<std::size_t> proportional_allocation(std::span<const std::size_t> sizes,
                                                 std::size_t total);

inline constexpr std::size_t kMaxKmeansIterations = 300;

// Lloyd's algorithm with k-means++ seeding on the given columns. The data is
// used as given; callers normalize first. Empty clusters are reseeded at the
// point farthest from its centroid.
Clustering kmeans(const DataMatrix& data, std::size_t k, std::span<const std::size_t> features,
                  Rng& rng);

struct EnsembleProtocol {
  std::vector<std::size_t> k_schedule;  // one run per entry
  double subspace_fraction = 0.7;
  Normalization normalization = Normalization::kMinMax;
  RandomSeed seed;

  std::size_t runs() const noexcept { return k_schedule.size(); }
  void validate(std::size_t d) const;
};

struct GeneratedMember {
  Clustering labels;
  std::size_t scheduled_k = 0;
  std::vector<std::size_t> features;
  std::uint64_t seed = 0;
};

struct GeneratedEnsemble {
  ClusteringEnsemble ensemble;
  std::vector<GeneratedMember> members;
};

// One k-means run per schedule entry, each on an independently drawn random
// subset of ceil(subspace_fraction * d) features. Run i uses the protocol
// generator split by i.
GeneratedEnsemble generate_ensemble(const DataMatrix& data, const EnsembleProtocol& protocol);

}  // namespace consensus

#endif  // CONSENSUS_BASE_GENERATION_H_
