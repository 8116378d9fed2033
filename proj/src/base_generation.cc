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

#include "consensus/base_generation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <string>

namespace consensus {
namespace {

double squared_distance(std::span<const double> a, std::span<const double> b,
                        std::span<const std::size_t> features) {
  double sum = 0.0;
  for (std::size_t f = 0; f < features.size(); ++f) {
    const double diff = a[features[f]] - b[f];
    sum += diff * diff;
  }
  return sum;
}

std::vector<std::size_t> default_features(const DataMatrix& data, const StratificationPlan& plan) {
  if (!plan.features.empty()) {
    for (std::size_t f : plan.features) {
      if (f >= data.d()) {
        throw Error(ErrorCode::kInvalidArgument,
                    "stratification feature " + std::to_string(f) + " out of range");
      }
    }
    return plan.features;
  }
  std::vector<std::size_t> out(std::min<std::size_t>(3, data.d()));
  std::iota(out.begin(), out.end(), std::size_t{0});
  return out;
}

std::size_t nearest_center(std::span<const double> point, const std::vector<std::vector<double>>& centers,
                           std::span<const std::size_t> features) {
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < centers.size(); ++c) {
    const double d = squared_distance(point, centers[c], features);
    if (d < best_d) {
      best_d = d;
      best = c;
    }
  }
  return best;
}

}  // namespace

Normalization parse_normalization(std::string_view name) {
  if (name == "none") return Normalization::kNone;
  if (name == "minmax" || name == "min-max") return Normalization::kMinMax;
  if (name == "zscore" || name == "z-score") return Normalization::kZScore;
  throw Error(ErrorCode::kInvalidArgument,
              "unknown normalization '" + std::string(name) + "' (none | minmax | zscore)");
}

std::string_view to_string(Normalization n) {
  switch (n) {
    case Normalization::kNone: return "none";
    case Normalization::kMinMax: return "minmax";
    case Normalization::kZScore: return "zscore";
  }
  return "none";
}

NormalizationParams NormalizationParams::fit(const DataMatrix& data, Normalization kind) {
  NormalizationParams p;
  p.kind = kind;
  p.offset.assign(data.d(), 0.0);
  p.scale.assign(data.d(), 1.0);
  if (kind == Normalization::kNone) return p;
  for (std::size_t j = 0; j < data.d(); ++j) {
    if (kind == Normalization::kMinMax) {
      double lo = data.values()(0, j);
      double hi = lo;
      for (std::size_t i = 1; i < data.n(); ++i) {
        lo = std::min(lo, data.values()(i, j));
        hi = std::max(hi, data.values()(i, j));
      }
      p.offset[j] = lo;
      p.scale[j] = hi > lo ? hi - lo : 1.0;
    } else {
      double mean = 0.0;
      for (std::size_t i = 0; i < data.n(); ++i) mean += data.values()(i, j);
      mean /= static_cast<double>(data.n());
      double var = 0.0;
      for (std::size_t i = 0; i < data.n(); ++i) {
        const double diff = data.values()(i, j) - mean;
        var += diff * diff;
      }
      var /= static_cast<double>(data.n());
      p.offset[j] = mean;
      p.scale[j] = var > 0.0 ? std::sqrt(var) : 1.0;
    }
  }
  return p;
}

std::vector<double> NormalizationParams::apply(std::span<const double> x) const {
  if (x.size() != offset.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "expected " + std::to_string(offset.size()) +
                                                   " features, got " + std::to_string(x.size()));
  }
  std::vector<double> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) out[j] = (x[j] - offset[j]) / scale[j];
  return out;
}

DataMatrix NormalizationParams::apply(const DataMatrix& data) const {
  Matrix out(data.n(), data.d());
  for (std::size_t i = 0; i < data.n(); ++i) {
    const auto row = apply(data.row(i));
    std::copy(row.begin(), row.end(), out.row(i).begin());
  }
  return DataMatrix(std::move(out), data.feature_names());
}

DataMatrix one_hot_encode(const DataMatrix& data, std::span<const std::size_t> columns) {
  std::vector<std::vector<double>> categories(data.d());
  std::vector<bool> encode(data.d(), false);
  for (std::size_t c : columns) {
    if (c >= data.d()) throw Error(ErrorCode::kInvalidArgument, "one-hot column out of range");
    encode[c] = true;
    auto& cats = categories[c];
    for (std::size_t i = 0; i < data.n(); ++i) cats.push_back(data.values()(i, c));
    std::sort(cats.begin(), cats.end());
    cats.erase(std::unique(cats.begin(), cats.end()), cats.end());
  }
  std::vector<std::string> names;
  for (std::size_t j = 0; j < data.d(); ++j) {
    if (!encode[j]) {
      names.push_back(data.feature_names()[j]);
      continue;
    }
    for (double v : categories[j]) {
      std::ostringstream name;
      name << data.feature_names()[j] << '=' << v;
      names.push_back(name.str());
    }
  }
  Matrix out(data.n(), names.size());
  for (std::size_t i = 0; i < data.n(); ++i) {
    std::size_t col = 0;
    for (std::size_t j = 0; j < data.d(); ++j) {
      const double v = data.values()(i, j);
      if (!encode[j]) {
        out(i, col++) = v;
        continue;
      }
      for (double cat : categories[j]) out(i, col++) = v == cat ? 1.0 : 0.0;
    }
  }
  return DataMatrix(std::move(out), std::move(names));
}

std::vector<std::size_t> proportional_allocation(std::span<const std::size_t> sizes,
                                                 std::size_t total) {
  std::size_t population = 0;
  for (std::size_t s : sizes) population += s;
  if (total > population) {
    throw Error(ErrorCode::kInvalidArgument, "cannot allocate " + std::to_string(total) +
                                                 " from " + std::to_string(population));
  }
  std::vector<std::size_t> quota(sizes.size(), 0);
  if (population == 0) return quota;
  std::vector<std::size_t> remainder(sizes.size(), 0);
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const auto scaled = static_cast<unsigned __int128>(total) * sizes[i];
    quota[i] = static_cast<std::size_t>(scaled / population);
    remainder[i] = static_cast<std::size_t>(scaled % population);
    assigned += quota[i];
  }
  std::vector<std::size_t> order(sizes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t i = 0; assigned < total; ++i) {
    ++quota[order[i]];
    ++assigned;
  }
  return quota;
}

std::vector<std::size_t> assign_strata(const DataMatrix& data, const StratificationPlan& plan) {
  if (plan.bins_per_feature < 1) {
    throw Error(ErrorCode::kInvalidArgument, "bins_per_feature must be at least 1");
  }
  const std::vector<std::size_t> features = default_features(data, plan);
  const std::size_t bins = plan.bins_per_feature;

  std::vector<std::vector<std::size_t>> keys(data.n(), std::vector<std::size_t>(features.size()));
  for (std::size_t f = 0; f < features.size(); ++f) {
    const std::size_t col = features[f];
    double lo = data.values()(0, col);
    double hi = lo;
    for (std::size_t i = 1; i < data.n(); ++i) {
      lo = std::min(lo, data.values()(i, col));
      hi = std::max(hi, data.values()(i, col));
    }
    for (std::size_t i = 0; i < data.n(); ++i) {
      std::size_t bin = 0;
      if (hi > lo) {
        const double pos = (data.values()(i, col) - lo) / (hi - lo) * static_cast<double>(bins);
        bin = std::min(bins - 1, static_cast<std::size_t>(pos));
      }
      keys[i][f] = bin;
    }
  }

  std::map<std::vector<std::size_t>, std::size_t> sizes;
  for (const auto& key : keys) ++sizes[key];

  // Sparse strata fold into the nearest (L1 over bin indices) stratum that is
  // large enough; ties go to the smaller key.
  std::map<std::vector<std::size_t>, std::vector<std::size_t>> target;
  for (const auto& [key, size] : sizes) {
    if (size >= plan.min_stratum_size) {
      target[key] = key;
      continue;
    }
    std::size_t best_dist = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> best = key;
    for (const auto& [other, other_size] : sizes) {
      if (other_size < plan.min_stratum_size) continue;
      std::size_t dist = 0;
      for (std::size_t f = 0; f < key.size(); ++f) {
        dist += key[f] > other[f] ? key[f] - other[f] : other[f] - key[f];
      }
      if (dist < best_dist) {
        best_dist = dist;
        best = other;
      }
    }
    target[key] = best;
  }

  std::map<std::vector<std::size_t>, std::size_t> ids;
  std::vector<std::size_t> strata(data.n());
  for (std::size_t i = 0; i < data.n(); ++i) {
    const auto& merged = target[keys[i]];
    auto [it, inserted] = ids.try_emplace(merged, ids.size());
    strata[i] = it->second;
  }
  return strata;
}

StratifiedSample stratified_sample(const DataMatrix& data, const StratificationPlan& plan, Rng& rng) {
  if (plan.sample_size > data.n()) {
    throw Error(ErrorCode::kInvalidArgument,
                "sample size " + std::to_string(plan.sample_size) + " exceeds the " +
                    std::to_string(data.n()) + " available objects");
  }
  if (plan.sample_size == 0) throw Error(ErrorCode::kInvalidArgument, "sample size must be positive");
  const std::vector<std::size_t> strata = assign_strata(data, plan);
  const std::size_t count = *std::max_element(strata.begin(), strata.end()) + 1;
  std::vector<std::vector<std::size_t>> members(count);
  for (std::size_t i = 0; i < data.n(); ++i) members[strata[i]].push_back(i);
  std::vector<std::size_t> sizes(count);
  for (std::size_t s = 0; s < count; ++s) sizes[s] = members[s].size();
  const std::vector<std::size_t> quota = proportional_allocation(sizes, plan.sample_size);

  std::vector<std::size_t> rows;
  rows.reserve(plan.sample_size);
  for (std::size_t s = 0; s < count; ++s) {
    auto& pool = members[s];
    for (std::size_t i = 0; i < quota[s]; ++i) {
      std::swap(pool[i], pool[i + rng.below(pool.size() - i)]);
      rows.push_back(pool[i]);
    }
  }
  return {data.select_rows(rows), rows};
}

Clustering kmeans(const DataMatrix& data, std::size_t k, std::span<const std::size_t> features,
                  Rng& rng) {
  const std::size_t n = data.n();
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "k-means needs 1 <= k <= n, got k=" + std::to_string(k) + ", n=" + std::to_string(n));
  }
  if (features.empty()) throw Error(ErrorCode::kInvalidArgument, "empty feature subset");
  for (std::size_t f : features) {
    if (f >= data.d()) throw Error(ErrorCode::kInvalidArgument, "feature index out of range");
  }
  const std::size_t dims = features.size();
  auto project = [&](std::size_t i) {
    std::vector<double> p(dims);
    for (std::size_t f = 0; f < dims; ++f) p[f] = data.values()(i, features[f]);
    return p;
  };

  // k-means++ seeding.
  std::vector<std::vector<double>> centers;
  std::vector<bool> chosen(n, false);
  std::size_t first = rng.below(n);
  centers.push_back(project(first));
  chosen[first] = true;
  std::vector<double> nearest(n);
  for (std::size_t i = 0; i < n; ++i) nearest[i] = squared_distance(data.row(i), centers[0], features);
  while (centers.size() < k) {
    double total = 0.0;
    for (double d : nearest) total += d;
    std::size_t pick = n;
    if (total > 0.0) {
      double target = rng.uniform() * total;
      for (std::size_t i = 0; i < n; ++i) {
        if (nearest[i] <= 0.0) continue;
        pick = i;
        target -= nearest[i];
        if (target < 0.0) break;
      }
    } else {
      std::vector<std::size_t> open;
      for (std::size_t i = 0; i < n; ++i) {
        if (!chosen[i]) open.push_back(i);
      }
      pick = open[rng.below(open.size())];
    }
    chosen[pick] = true;
    centers.push_back(project(pick));
    for (std::size_t i = 0; i < n; ++i) {
      nearest[i] = std::min(nearest[i], squared_distance(data.row(i), centers.back(), features));
    }
  }

  std::vector<std::size_t> assign(n);
  for (std::size_t i = 0; i < n; ++i) assign[i] = nearest_center(data.row(i), centers, features);

  auto repair_empty = [&]() {
    std::vector<std::size_t> sizes(k, 0);
    for (std::size_t a : assign) ++sizes[a];
    for (std::size_t c = 0; c < k; ++c) {
      if (sizes[c] != 0) continue;
      std::size_t far = n;
      double far_d = -1.0;
      for (std::size_t i = 0; i < n; ++i) {
        if (sizes[assign[i]] < 2) continue;
        const double d = squared_distance(data.row(i), centers[assign[i]], features);
        if (d > far_d) {
          far_d = d;
          far = i;
        }
      }
      if (far == n) break;
      --sizes[assign[far]];
      assign[far] = c;
      sizes[c] = 1;
      centers[c] = project(far);
    }
  };

  for (std::size_t iter = 0; iter < kMaxKmeansIterations; ++iter) {
    repair_empty();
    std::vector<std::size_t> counts(k, 0);
    for (auto& c : centers) std::fill(c.begin(), c.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      ++counts[assign[i]];
      for (std::size_t f = 0; f < dims; ++f) centers[assign[i]][f] += data.values()(i, features[f]);
    }
    for (std::size_t c = 0; c < k; ++c) {
      for (double& v : centers[c]) v /= static_cast<double>(counts[c]);
    }
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t next = nearest_center(data.row(i), centers, features);
      if (next != assign[i]) {
        assign[i] = next;
        changed = true;
      }
    }
    if (!changed) break;
  }
  repair_empty();

  std::vector<Label> labels(n);
  for (std::size_t i = 0; i < n; ++i) labels[i] = static_cast<Label>(assign[i] + 1);
  return Clustering(labels);
}

void EnsembleProtocol::validate(std::size_t d) const {
  if (k_schedule.empty()) throw Error(ErrorCode::kInvalidArgument, "empty k schedule");
  for (std::size_t k : k_schedule) {
    if (k < 2) throw Error(ErrorCode::kInvalidArgument, "every scheduled k must be >= 2");
  }
  if (!(subspace_fraction > 0.0 && subspace_fraction <= 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "subspace_fraction must lie in (0, 1]");
  }
  if (d == 0) throw Error(ErrorCode::kInvalidArgument, "data has no features");
}

GeneratedEnsemble generate_ensemble(const DataMatrix& data, const EnsembleProtocol& protocol) {
  protocol.validate(data.d());
  const DataMatrix scaled = NormalizationParams::fit(data, protocol.normalization).apply(data);
  const auto subset_size = std::max<std::size_t>(
      1, std::min(data.d(), static_cast<std::size_t>(
                                std::ceil(protocol.subspace_fraction * static_cast<double>(data.d()) -
                                          1e-12))));
  const Rng root(protocol.seed);

  GeneratedEnsemble out;
  std::vector<Clustering> members;
  for (std::size_t run = 0; run < protocol.runs(); ++run) {
    Rng rng = root.split(run);
    std::vector<std::size_t> all(data.d());
    std::iota(all.begin(), all.end(), std::size_t{0});
    for (std::size_t i = 0; i < subset_size; ++i) std::swap(all[i], all[i + rng.below(all.size() - i)]);
    std::vector<std::size_t> features(all.begin(), all.begin() + static_cast<long>(subset_size));
    std::sort(features.begin(), features.end());

    GeneratedMember member;
    member.seed = rng.seed().value;
    member.scheduled_k = protocol.k_schedule[run];
    member.labels = kmeans(scaled, member.scheduled_k, features, rng);
    member.features = std::move(features);
    members.push_back(member.labels);
    out.members.push_back(std::move(member));
  }
  out.ensemble = ClusteringEnsemble(std::move(members));
  return out;
}

}  // namespace consensus
