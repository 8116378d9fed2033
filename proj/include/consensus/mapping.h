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

// Classifying new objects into consensus clusters, either by nearest
// cluster centroid or by a k-nearest-neighbor vote over the training set.

#ifndef CONSENSUS_MAPPING_H_
#define CONSENSUS_MAPPING_H_

#include <filesystem>
#include <optional>
#include <span>

#include "consensus/base_generation.h"
#include "consensus/core.h"

namespace consensus {

class CentroidModel {
 public:
  static constexpr int kFormatVersion = 1;

  CentroidModel(NormalizationParams normalization, Matrix centroids,
                std::vector<std::string> feature_names);

  std::size_t k() const noexcept { return centroids_.rows(); }
  std::size_t d() const noexcept { return centroids_.cols(); }
  const Matrix& centroids() const noexcept { return centroids_; }
  const NormalizationParams& normalization() const noexcept { return normalization_; }
  const std::vector<std::string>& feature_names() const noexcept { return feature_names_; }

  // Training objects in normalized space with their consensus labels, kept
  // so the model file can also serve kNN assignment.
  void set_training(DataMatrix normalized, Clustering labels);
  const std::optional<DataMatrix>& training_data() const noexcept { return training_data_; }
  const std::optional<Clustering>& training_labels() const noexcept { return training_labels_; }

  void save(const std::filesystem::path& path) const;
  static CentroidModel load(const std::filesystem::path& path);

 private:
  NormalizationParams normalization_;
  Matrix centroids_;  // normalized space, row l-1 is cluster l
  std::vector<std::string> feature_names_;
  std::optional<DataMatrix> training_data_;
  std::optional<Clustering> training_labels_;
};

// Centroids are means of the normalized rows of each consensus cluster.
CentroidModel fit_centroids(const DataMatrix& data, const Clustering& consensus,
                            Normalization normalization = Normalization::kNone);

// Label of the Euclidean-nearest centroid after normalizing x with the
// training parameters. Ties go to the smaller label.
Label assign(const CentroidModel& model, std::span<const double> x);

// Majority label among the k_nn Euclidean-nearest rows of `data` (used as
// given). Vote ties go to the tied label whose nearest member is closest.
Label knn_assign(const DataMatrix& data, const Clustering& consensus, std::span<const double> x,
                 std::size_t k_nn);

// kNN over the training set stored in the model, in its normalized space.
Label knn_assign(const CentroidModel& model, std::span<const double> x, std::size_t k_nn);

}  // namespace consensus

#endif  // CONSENSUS_MAPPING_H_
