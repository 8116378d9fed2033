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

#ifndef CONSENSUS_RELABEL_H_
#define CONSENSUS_RELABEL_H_

#include <vector>

#include "consensus/core.h"

namespace consensus {

// Reference label chosen for each source cluster by plurality vote over its
// objects. Ties go to the reference label of the lowest-index object among
// the tied labels. Indexed by source label - 1.
std::vector<Label> plurality_mapping(const Clustering& source, const Clustering& reference);

// Source rewritten on the reference's label vocabulary via
// plurality_mapping(), then canonicalized. Never increases k.
Clustering align_labels(const Clustering& source, const Clustering& reference);

struct RefinedEnsemble {
  ClusteringEnsemble members;  // the base members first, then transformed ones
  std::size_t reference = 0;   // base index of the reference member
  std::vector<std::size_t> transformed;  // base indices that were aligned
};

// Members with more than k_hat clusters are aligned to the highest-quality
// member having exactly k_hat clusters; the result is base followed by the
// transformed members. With `dedupe` off, the pass-through members are also
// repeated in the refined half.
RefinedEnsemble build_refined_ensemble(const ClusteringEnsemble& base, std::size_t k_hat,
                                       bool dedupe = true);

}  // namespace consensus

#endif  // CONSENSUS_RELABEL_H_
