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

#include "consensus/core.h"

#include <cmath>
#include <unordered_map>
#include <utility>

#include "consensus/metrics.h"

namespace consensus {

DataMatrix::DataMatrix(Matrix values, std::vector<std::string> feature_names)
    : values_(std::move(values)), names_(std::move(feature_names)) {
  if (values_.rows() == 0 || values_.cols() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "data matrix must have at least one row and column");
  }
  if (names_.empty()) {
    for (std::size_t j = 0; j < values_.cols(); ++j) names_.push_back("f" + std::to_string(j));
  }
  if (names_.size() != values_.cols()) {
    throw Error(ErrorCode::kSizeMismatch,
                "expected " + std::to_string(values_.cols()) + " feature names, got " +
                    std::to_string(names_.size()));
  }
  for (double v : values_.values()) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kInvalidArgument, "data matrix contains missing or non-finite values");
    }
  }
}

DataMatrix DataMatrix::select_rows(std::span<const std::size_t> rows) const {
  Matrix out(rows.size(), d());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r] >= n()) throw Error(ErrorCode::kInvalidArgument, "row index out of range");
    auto src = row(rows[r]);
    std::copy(src.begin(), src.end(), out.row(r).begin());
  }
  return DataMatrix(std::move(out), names_);
}

Clustering::Clustering(std::span<const Label> raw_labels) {
  if (raw_labels.empty()) throw Error(ErrorCode::kInvalidArgument, "empty label vector");
  std::unordered_map<Label, Label> renumber;
  labels_.reserve(raw_labels.size());
  for (Label raw : raw_labels) {
    if (raw <= 0) {
      throw Error(ErrorCode::kInvalidArgument,
                  "labels must be positive integers, got " + std::to_string(raw));
    }
    auto [it, inserted] = renumber.try_emplace(raw, k_ + 1);
    if (inserted) ++k_;
    labels_.push_back(it->second);
  }
}

Clustering::Clustering(std::initializer_list<Label> raw_labels)
    : Clustering(std::span<const Label>(raw_labels.begin(), raw_labels.size())) {}

std::vector<std::size_t> Clustering::cluster_sizes() const {
  std::vector<std::size_t> sizes(static_cast<std::size_t>(k_), 0);
  for (Label l : labels_) ++sizes[static_cast<std::size_t>(l - 1)];
  return sizes;
}

Clustering canonicalize(std::span<const Label> raw_labels) { return Clustering(raw_labels); }

bool partition_equal(const Clustering& a, const Clustering& b) {
  if (a.n() != b.n()) {
    throw Error(ErrorCode::kSizeMismatch, "clusterings cover different object counts (" +
                                              std::to_string(a.n()) + " vs " +
                                              std::to_string(b.n()) + ")");
  }
  return a == b;
}

ClusteringEnsemble::ClusteringEnsemble(std::vector<Clustering> members)
    : members_(std::move(members)) {
  for (const auto& c : members_) {
    if (c.n() != members_.front().n()) {
      throw Error(ErrorCode::kSizeMismatch, "ensemble members cover different object counts");
    }
  }
}

ClusteringEnsemble ClusteringEnsemble::with_similarity() const {
  ClusteringEnsemble out = *this;
  if (!out.similarity_ && size() >= 2) out.similarity_ = ensemble_similarity_matrix(*this);
  return out;
}

}  // namespace consensus
