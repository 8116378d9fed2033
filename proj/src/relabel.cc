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

#include "consensus/relabel.h"

#include <limits>
#include <string>

#include "consensus/metrics.h"

namespace consensus {

std::vector<Label> plurality_mapping(const Clustering& source, const Clustering& reference) {
  if (source.n() != reference.n()) {
    throw Error(ErrorCode::kSizeMismatch, "source and reference cover different object counts");
  }
  const auto ks = static_cast<std::size_t>(source.k());
  const auto kr = static_cast<std::size_t>(reference.k());
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> votes(ks * kr, 0);
  std::vector<std::size_t> first_object(ks * kr, kNone);
  for (std::size_t i = 0; i < source.n(); ++i) {
    const std::size_t cell = static_cast<std::size_t>(source[i] - 1) * kr +
                             static_cast<std::size_t>(reference[i] - 1);
    ++votes[cell];
    if (first_object[cell] == kNone) first_object[cell] = i;
  }
  std::vector<Label> mapping(ks, 0);
  for (std::size_t s = 0; s < ks; ++s) {
    std::size_t best = 0;
    for (std::size_t r = 1; r < kr; ++r) {
      const std::size_t cand = s * kr + r;
      const std::size_t cur = s * kr + best;
      if (votes[cand] > votes[cur] ||
          (votes[cand] == votes[cur] && first_object[cand] < first_object[cur])) {
        best = r;
      }
    }
    mapping[s] = static_cast<Label>(best + 1);
  }
  return mapping;
}

Clustering align_labels(const Clustering& source, const Clustering& reference) {
  const std::vector<Label> mapping = plurality_mapping(source, reference);
  std::vector<Label> out(source.n());
  for (std::size_t i = 0; i < source.n(); ++i) {
    out[i] = mapping[static_cast<std::size_t>(source[i] - 1)];
  }
  return Clustering(out);
}

RefinedEnsemble build_refined_ensemble(const ClusteringEnsemble& base, std::size_t k_hat,
                                       bool dedupe) {
  if (base.empty()) throw Error(ErrorCode::kInvalidArgument, "empty base ensemble");
  std::vector<double> quality(base.size(), 0.0);
  if (base.size() >= 2) quality = quality_weights(base);

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  std::size_t reference = kNone;
  for (std::size_t p = 0; p < base.size(); ++p) {
    if (static_cast<std::size_t>(base[p].k()) != k_hat) continue;
    if (reference == kNone || quality[p] > quality[reference]) reference = p;
  }
  if (reference == kNone) {
    throw Error(ErrorCode::kAlgorithm,
                "no base member has the estimated " + std::to_string(k_hat) + " clusters");
  }

  RefinedEnsemble out;
  out.reference = reference;
  std::vector<Clustering> members = base.members();
  for (std::size_t p = 0; p < base.size(); ++p) {
    if (static_cast<std::size_t>(base[p].k()) > k_hat) {
      members.push_back(align_labels(base[p], base[reference]));
      out.transformed.push_back(p);
    } else if (!dedupe) {
      members.push_back(base[p]);
    }
  }
  out.members = ClusteringEnsemble(std::move(members));
  return out;
}

}  // namespace consensus
