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

#include "consensus/mapping.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "consensus/io.h"
#include "json.hpp"

namespace consensus {
namespace {

using nlohmann::json;

double squared_distance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    sum += diff * diff;
  }
  return sum;
}

void require_dimension(std::size_t expected, std::size_t got) {
  if (expected != got) {
    throw Error(ErrorCode::kDimensionMismatch, "expected " + std::to_string(expected) +
                                                   " features, got " + std::to_string(got));
  }
}

}  // namespace

CentroidModel::CentroidModel(NormalizationParams normalization, Matrix centroids,
                             std::vector<std::string> feature_names)
    : normalization_(std::move(normalization)),
      centroids_(std::move(centroids)),
      feature_names_(std::move(feature_names)) {
  if (centroids_.rows() == 0 || centroids_.cols() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "centroid model needs k >= 1 and d >= 1");
  }
  require_dimension(centroids_.cols(), normalization_.offset.size());
  require_dimension(centroids_.cols(), normalization_.scale.size());
  for (double v : centroids_.values()) {
    if (!std::isfinite(v)) throw Error(ErrorCode::kInvalidArgument, "non-finite centroid");
  }
}

void CentroidModel::set_training(DataMatrix normalized, Clustering labels) {
  require_dimension(d(), normalized.d());
  if (normalized.n() != labels.n()) {
    throw Error(ErrorCode::kSizeMismatch, "training rows and labels differ in count");
  }
  training_data_ = std::move(normalized);
  training_labels_ = std::move(labels);
}

void CentroidModel::save(const std::filesystem::path& path) const {
  json doc;
  doc["format"] = "consensus-centroid-model";
  doc["version"] = kFormatVersion;
  doc["normalization"] = std::string(to_string(normalization_.kind));
  doc["k"] = k();
  doc["d"] = d();
  doc["feature_names"] = feature_names_;
  doc["offset"] = normalization_.offset;
  doc["scale"] = normalization_.scale;
  doc["centroids"] = json::array();
  for (std::size_t l = 0; l < k(); ++l) {
    const auto row = centroids_.row(l);
    doc["centroids"].push_back(std::vector<double>(row.begin(), row.end()));
  }
  if (training_data_) {
    json rows = json::array();
    for (std::size_t i = 0; i < training_data_->n(); ++i) {
      const auto row = training_data_->row(i);
      rows.push_back(std::vector<double>(row.begin(), row.end()));
    }
    doc["training"] = {{"labels", training_labels_->labels()}, {"rows", std::move(rows)}};
  }
  auto out = open_for_write(path);
  out << doc.dump(1) << '\n';
}

CentroidModel CentroidModel::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open model '" + path.string() + "'");
  try {
    const json doc = json::parse(in);
    if (doc.value("format", std::string()) != "consensus-centroid-model") {
      throw Error(ErrorCode::kInvalidArgument, "'" + path.string() + "' is not a centroid model");
    }
    if (doc.value("version", 0) != kFormatVersion) {
      throw Error(ErrorCode::kInvalidArgument, "unsupported model version");
    }
    const auto k = doc.at("k").get<std::size_t>();
    const auto d = doc.at("d").get<std::size_t>();
    NormalizationParams norm;
    norm.kind = parse_normalization(doc.at("normalization").get<std::string>());
    norm.offset = doc.at("offset").get<std::vector<double>>();
    norm.scale = doc.at("scale").get<std::vector<double>>();
    Matrix centroids(k, d);
    const auto& rows = doc.at("centroids");
    if (rows.size() != k) throw Error(ErrorCode::kInvalidArgument, "centroid count differs from k");
    for (std::size_t l = 0; l < k; ++l) {
      const auto row = rows[l].get<std::vector<double>>();
      require_dimension(d, row.size());
      std::copy(row.begin(), row.end(), centroids.row(l).begin());
    }
    CentroidModel model(std::move(norm), std::move(centroids),
                        doc.at("feature_names").get<std::vector<std::string>>());
    if (doc.contains("training")) {
      const auto& training = doc.at("training");
      const auto labels = training.at("labels").get<std::vector<Label>>();
      const auto& train_rows = training.at("rows");
      Matrix values(train_rows.size(), d);
      for (std::size_t i = 0; i < train_rows.size(); ++i) {
        const auto row = train_rows[i].get<std::vector<double>>();
        require_dimension(d, row.size());
        std::copy(row.begin(), row.end(), values.row(i).begin());
      }
      model.set_training(DataMatrix(std::move(values), model.feature_names()), Clustering(labels));
    }
    return model;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                "malformed model '" + path.string() + "': " + e.what());
  }
}

CentroidModel fit_centroids(const DataMatrix& data, const Clustering& consensus,
                            Normalization normalization) {
  if (data.n() != consensus.n()) {
    throw Error(ErrorCode::kSizeMismatch, "data has " + std::to_string(data.n()) +
                                              " rows but the clustering covers " +
                                              std::to_string(consensus.n()));
  }
  NormalizationParams params = NormalizationParams::fit(data, normalization);
  DataMatrix scaled = params.apply(data);
  const auto k = static_cast<std::size_t>(consensus.k());
  Matrix sums(k, data.d(), 0.0);
  std::vector<std::size_t> counts(k, 0);
  for (std::size_t i = 0; i < data.n(); ++i) {
    const auto l = static_cast<std::size_t>(consensus[i] - 1);
    ++counts[l];
    const auto row = scaled.row(i);
    for (std::size_t j = 0; j < data.d(); ++j) sums(l, j) += row[j];
  }
  for (std::size_t l = 0; l < k; ++l) {
    for (std::size_t j = 0; j < data.d(); ++j) sums(l, j) /= static_cast<double>(counts[l]);
  }
  CentroidModel model(std::move(params), std::move(sums), data.feature_names());
  model.set_training(std::move(scaled), consensus);
  return model;
}

Label assign(const CentroidModel& model, std::span<const double> x) {
  require_dimension(model.d(), x.size());
  const std::vector<double> point = model.normalization().apply(x);
  Label best = 1;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < model.k(); ++l) {
    const double d = squared_distance(point, model.centroids().row(l));
    if (d < best_d) {
      best_d = d;
      best = static_cast<Label>(l + 1);
    }
  }
  return best;
}

Label knn_assign(const DataMatrix& data, const Clustering& consensus, std::span<const double> x,
                 std::size_t k_nn) {
  require_dimension(data.d(), x.size());
  if (data.n() != consensus.n()) {
    throw Error(ErrorCode::kSizeMismatch, "training rows and labels differ in count");
  }
  if (k_nn < 1 || k_nn > data.n()) {
    throw Error(ErrorCode::kInvalidArgument, "k_nn must lie in [1, " + std::to_string(data.n()) +
                                                 "], got " + std::to_string(k_nn));
  }
  std::vector<double> dist(data.n());
  for (std::size_t i = 0; i < data.n(); ++i) dist[i] = squared_distance(data.row(i), x);
  std::vector<std::size_t> order(data.n());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(k_nn), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      return dist[a] < dist[b] || (dist[a] == dist[b] && a < b);
                    });

  // first_seen is the neighbor rank of each label's closest member.
  std::vector<std::size_t> votes(static_cast<std::size_t>(consensus.k()), 0);
  std::vector<std::size_t> first_seen(votes.size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t r = 0; r < k_nn; ++r) {
    const auto l = static_cast<std::size_t>(consensus[order[r]] - 1);
    ++votes[l];
    first_seen[l] = std::min(first_seen[l], r);
  }
  std::size_t best = 0;
  for (std::size_t l = 1; l < votes.size(); ++l) {
    if (votes[l] > votes[best] || (votes[l] == votes[best] && first_seen[l] < first_seen[best])) {
      best = l;
    }
  }
  return static_cast<Label>(best + 1);
}

Label knn_assign(const CentroidModel& model, std::span<const double> x, std::size_t k_nn) {
  if (!model.training_data()) {
    throw Error(ErrorCode::kInvalidArgument, "model carries no training set for kNN assignment");
  }
  require_dimension(model.d(), x.size());
  const std::vector<double> point = model.normalization().apply(x);
  return knn_assign(*model.training_data(), *model.training_labels(), point, k_nn);
}

}  // namespace consensus
