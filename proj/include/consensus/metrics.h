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

#ifndef CONSENSUS_METRICS_H_
#define CONSENSUS_METRICS_H_

#include <cstdint>
#include <vector>

#include "consensus/core.h"

namespace consensus {

// Co-occurrence counts between the clusters of two partitions.
struct ContingencyTable {
  std::size_t rows = 0;  // clusters of the first partition
  std::size_t cols = 0;  // clusters of the second partition
  std::vector<std::int64_t> counts;  // row-major rows x cols
  std::vector<std::int64_t> row_sums;
  std::vector<std::int64_t> col_sums;
  std::int64_t total = 0;

  std::int64_t at(std::size_t i, std::size_t j) const { return counts[i * cols + j]; }
};

// The two quantities optimized by the consensus search: average agreement
// with the ensemble (maximized) and its spread (minimized).
struct ObjectiveVector {
  double mean_ari = 0.0;
  double std_ari = 0.0;

  bool operator==(const ObjectiveVector&) const = default;
};

ContingencyTable contingency(const Clustering& a, const Clustering& b);

// Hubert-Arabie adjusted Rand index. Pair counts are accumulated in 128-bit
// integers and only the final ratio is taken in floating point. When the
// denominator vanishes (both partitions all-singletons or both a single
// cluster) the result is 1.0 for equal partitions and 0.0 otherwise.
double adjusted_rand_index(const Clustering& a, const Clustering& b);

// m x m matrix of pairwise member ARI, unit diagonal. Uses the ensemble's
// cached matrix when present.
Matrix ensemble_similarity_matrix(const ClusteringEnsemble& e);

// Mean ARI of member p against every other member.
double quality_weight(const ClusteringEnsemble& e, std::size_t p);
std::vector<double> quality_weights(const ClusteringEnsemble& e);

// Mean and population standard deviation of ARI(candidate, member) over all
// members.
ObjectiveVector objectives(const Clustering& candidate, const ClusteringEnsemble& e);

}  // namespace consensus

#endif  // CONSENSUS_METRICS_H_
