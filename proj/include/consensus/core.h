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

#ifndef CONSENSUS_CORE_H_
#define CONSENSUS_CORE_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace consensus {

enum class ErrorCode {
  kInvalidArgument,
  kSizeMismatch,
  kDimensionMismatch,
  kIo,
  kAlgorithm,
};

// All library failures are reported through this exception type. The C API
// maps `code()` onto its status enum.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

using Label = std::int32_t;

// Dense row-major matrix of doubles.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), values_(rows * cols, fill) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return values_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return values_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {values_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const {
    return {values_.data() + r * cols_, cols_};
  }

  const std::vector<double>& values() const noexcept { return values_; }

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> values_;
};

// n objects described by d real-valued features. Row order defines object
// identity for every downstream stage.
class DataMatrix {
 public:
  DataMatrix(Matrix values, std::vector<std::string> feature_names);

  std::size_t n() const noexcept { return values_.rows(); }
  std::size_t d() const noexcept { return values_.cols(); }
  const Matrix& values() const noexcept { return values_; }
  const std::vector<std::string>& feature_names() const noexcept { return names_; }
  std::span<const double> row(std::size_t i) const { return values_.row(i); }

  // New matrix holding the given rows, in the given order.
  DataMatrix select_rows(std::span<const std::size_t> rows) const;

 private:
  Matrix values_;
  std::vector<std::string> names_;
};

// A partition of n objects. Labels are always stored canonically: 1..k,
// numbered by order of first appearance, so two partition-equivalent
// clusterings compare equal with operator==.
class Clustering {
 public:
  Clustering() = default;
  // Accepts any positive labels, e.g. {3,3,7}; throws on empty input or
  // non-positive labels.
  explicit Clustering(std::span<const Label> raw_labels);
  Clustering(std::initializer_list<Label> raw_labels);

  std::size_t n() const noexcept { return labels_.size(); }
  Label k() const noexcept { return k_; }
  const std::vector<Label>& labels() const noexcept { return labels_; }
  Label operator[](std::size_t i) const { return labels_[i]; }

  // Object count of every cluster, indexed by label - 1.
  std::vector<std::size_t> cluster_sizes() const;

  bool operator==(const Clustering&) const = default;
  auto operator<=>(const Clustering&) const = default;

 private:
  std::vector<Label> labels_;
  Label k_ = 0;
};

Clustering canonicalize(std::span<const Label> raw_labels);
bool partition_equal(const Clustering& a, const Clustering& b);

// Ordered members over the same objects, with an optional cached m x m ARI
// matrix.
class ClusteringEnsemble {
 public:
  ClusteringEnsemble() = default;
  explicit ClusteringEnsemble(std::vector<Clustering> members);

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  // Object count shared by all members; 0 for an empty ensemble.
  std::size_t n() const noexcept { return members_.empty() ? 0 : members_.front().n(); }
  const Clustering& operator[](std::size_t i) const { return members_[i]; }
  const std::vector<Clustering>& members() const noexcept { return members_; }

  const std::optional<Matrix>& similarity() const noexcept { return similarity_; }
  // Copy of this ensemble with the pairwise ARI matrix computed and cached.
  ClusteringEnsemble with_similarity() const;

 private:
  std::vector<Clustering> members_;
  std::optional<Matrix> similarity_;
};

}  // namespace consensus

#endif  // CONSENSUS_CORE_H_
