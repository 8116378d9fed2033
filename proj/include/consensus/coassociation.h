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

// Weighted co-association matrix, threshold sweep over its similarity graph,
// and the cluster-count estimator built on the sweep's stable plateaus.

#ifndef CONSENSUS_COASSOCIATION_H_
#define CONSENSUS_COASSOCIATION_H_

#include <map>
#include <ostream>
#include <vector>

#include "consensus/core.h"

namespace consensus {

enum class CoassocMode {
  // Co-occurrence count plus cluster-count confidence and quality weights.
  kWeighted,
  // Co-occurrence count only.
  kPlain,
};

struct WeightedCoassocMatrix {
  Matrix sim;  // symmetric n x n, zero diagonal
  double scale = 1.0;  // w; 1.0 in plain mode
  CoassocMode mode = CoassocMode::kWeighted;

  std::size_t n() const noexcept { return sim.rows(); }
  double max_weight() const;
};

struct SweepStep {
  double threshold = 0.0;
  std::size_t component_count = 0;
};

struct ThresholdSweepResult {
  std::vector<SweepStep> steps;
  // Longest run of consecutive steps at each component count.
  std::map<std::size_t, std::size_t> stability;
  // Most stable count; ties go to the smaller count. The ensemble-aware
  // choice is made by estimate_cluster_count().
  std::size_t estimated_k = 0;
};

struct ComponentResult {
  std::size_t count = 0;
  Clustering labels;  // objects labeled by component, canonical order
};

// Ratio of the mean member cluster count to the mean member quality weight.
// Throws kAlgorithm when the mean quality is not positive.
double build_scale_factor(const ClusteringEnsemble& e);

// sim(i,j) = sum_p I(i~j) * k_p + 2 w sum_p I(i~j) * q_p in weighted mode;
// the plain co-occurrence count in plain mode.
WeightedCoassocMatrix build_weighted_coassoc(const ClusteringEnsemble& e,
                                             CoassocMode mode = CoassocMode::kWeighted);

// Components of the undirected graph with an edge wherever sim > threshold.
ComponentResult connected_components(const WeightedCoassocMatrix& matrix, double threshold);

inline constexpr int kDefaultSweepDivisor = 10;
inline constexpr int kDefaultSweepSteps = 100;

// Sweeps `steps` equally spaced thresholds from max/t up to max inclusive.
ThresholdSweepResult threshold_sweep(const WeightedCoassocMatrix& matrix,
                                     int t = kDefaultSweepDivisor,
                                     int steps = kDefaultSweepSteps);

// Chooses k among the sweep's component counts that some member also has.
// Highest stability wins; ties prefer the highest-quality member's k, then
// the smaller count. Falls back to the highest-quality member's k when no
// swept count matches a member.
std::size_t estimate_cluster_count(const ClusteringEnsemble& e, const ThresholdSweepResult& sweep);

// Evidence-accumulation baseline: average-linkage agglomeration on
// m - co-occurrence distances, cut at k clusters.
Clustering eac_baseline(const ClusteringEnsemble& e, std::size_t k);

void write_sweep_csv(std::ostream& out, const ThresholdSweepResult& sweep);

}  // namespace consensus

#endif  // CONSENSUS_COASSOCIATION_H_
