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

#include "consensus/metrics.h"

#include <algorithm>
#include <cmath>
#include <string>

namespace consensus {
namespace {

using int128 = __int128;

int128 choose2(std::int64_t x) { return static_cast<int128>(x) * (x - 1) / 2; }

void require_same_size(const Clustering& a, const Clustering& b) {
  if (a.n() != b.n()) {
    throw Error(ErrorCode::kSizeMismatch, "clusterings cover different object counts (" +
                                              std::to_string(a.n()) + " vs " +
                                              std::to_string(b.n()) + ")");
  }
}

void require_members(const ClusteringEnsemble& e, std::size_t min_members) {
  if (e.size() < min_members) {
    throw Error(ErrorCode::kInvalidArgument, "ensemble needs at least " +
                                                 std::to_string(min_members) + " members, has " +
                                                 std::to_string(e.size()));
  }
}

}  // namespace

ContingencyTable contingency(const Clustering& a, const Clustering& b) {
  require_same_size(a, b);
  if (a.n() == 0) throw Error(ErrorCode::kInvalidArgument, "contingency of empty clusterings");
  ContingencyTable t;
  t.rows = static_cast<std::size_t>(a.k());
  t.cols = static_cast<std::size_t>(b.k());
  t.counts.assign(t.rows * t.cols, 0);
  t.row_sums.assign(t.rows, 0);
  t.col_sums.assign(t.cols, 0);
  for (std::size_t i = 0; i < a.n(); ++i) {
    const auto r = static_cast<std::size_t>(a[i] - 1);
    const auto c = static_cast<std::size_t>(b[i] - 1);
    ++t.counts[r * t.cols + c];
    ++t.row_sums[r];
    ++t.col_sums[c];
  }
  t.total = static_cast<std::int64_t>(a.n());
  return t;
}

double adjusted_rand_index(const Clustering& a, const Clustering& b) {
  require_same_size(a, b);
  if (a.n() < 2) throw Error(ErrorCode::kInvalidArgument, "ARI needs at least two objects");
  const ContingencyTable t = contingency(a, b);

  int128 index = 0;
  for (std::int64_t c : t.counts) index += choose2(c);
  int128 sum_a = 0;
  for (std::int64_t c : t.row_sums) sum_a += choose2(c);
  int128 sum_b = 0;
  for (std::int64_t c : t.col_sums) sum_b += choose2(c);
  const int128 pairs = choose2(t.total);

  // (Index - Expected) / (Max - Expected) with both sides scaled by 2 * pairs.
  const int128 numerator = 2 * index * pairs - 2 * sum_a * sum_b;
  const int128 denominator = (sum_a + sum_b) * pairs - 2 * sum_a * sum_b;
  if (denominator == 0) return a == b ? 1.0 : 0.0;
  return static_cast<double>(static_cast<long double>(numerator) /
                             static_cast<long double>(denominator));
}

Matrix ensemble_similarity_matrix(const ClusteringEnsemble& e) {
  if (e.similarity()) return *e.similarity();
  require_members(e, 2);
  const std::size_t m = e.size();
  Matrix sim(m, m, 1.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i + 1; j < m; ++j) {
      const double v = adjusted_rand_index(e[i], e[j]);
      sim(i, j) = v;
      sim(j, i) = v;
    }
  }
  return sim;
}

double quality_weight(const ClusteringEnsemble& e, std::size_t p) {
  require_members(e, 2);
  if (p >= e.size()) throw Error(ErrorCode::kInvalidArgument, "member index out of range");
  double sum = 0.0;
  for (std::size_t q = 0; q < e.size(); ++q) {
    if (q == p) continue;
    sum += e.similarity() ? (*e.similarity())(p, q) : adjusted_rand_index(e[p], e[q]);
  }
  return sum / static_cast<double>(e.size() - 1);
}

std::vector<double> quality_weights(const ClusteringEnsemble& e) {
  const Matrix sim = ensemble_similarity_matrix(e);
  const std::size_t m = e.size();
  std::vector<double> weights(m, 0.0);
  for (std::size_t p = 0; p < m; ++p) {
    double sum = 0.0;
    for (std::size_t q = 0; q < m; ++q) {
      if (q != p) sum += sim(p, q);
    }
    weights[p] = sum / static_cast<double>(m - 1);
  }
  return weights;
}

ObjectiveVector objectives(const Clustering& candidate, const ClusteringEnsemble& e) {
  require_members(e, 1);
  std::vector<double> values;
  values.reserve(e.size());
  for (const auto& member : e.members()) values.push_back(adjusted_rand_index(candidate, member));
  if (std::all_of(values.begin(), values.end(), [&](double v) { return v == values.front(); })) {
    return {values.front(), 0.0};
  }
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double var = 0.0;
  for (double v : values) var += (v - mean) * (v - mean);
  var /= static_cast<double>(values.size());
  return {mean, std::sqrt(var)};
}

}  // namespace consensus
