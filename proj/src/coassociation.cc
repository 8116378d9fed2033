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

#include "consensus/coassociation.h"

#include <algorithm>
#include <deque>
#include <limits>
#include <numeric>
#include <string>
#include <utility>

#include "consensus/io.h"
#include "consensus/metrics.h"

namespace consensus {
namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns true when x and y were in different sets.
  bool unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    if (y < x) std::swap(x, y);
    parent_[y] = x;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

Clustering labels_from_sets(DisjointSets& sets, std::size_t n) {
  std::vector<Label> raw(n);
  for (std::size_t i = 0; i < n; ++i) raw[i] = static_cast<Label>(sets.find(i) + 1);
  return Clustering(raw);
}

void require_members(const ClusteringEnsemble& e) {
  if (e.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "co-association needs at least 2 members, got " + std::to_string(e.size()));
  }
}

}  // namespace

double WeightedCoassocMatrix::max_weight() const {
  double best = 0.0;
  for (double v : sim.values()) best = std::max(best, v);
  return best;
}

double build_scale_factor(const ClusteringEnsemble& e) {
  require_members(e);
  const std::vector<double> quality = quality_weights(e);
  double mean_k = 0.0;
  double mean_quality = 0.0;
  for (std::size_t p = 0; p < e.size(); ++p) {
    mean_k += static_cast<double>(e[p].k());
    mean_quality += quality[p];
  }
  mean_k /= static_cast<double>(e.size());
  mean_quality /= static_cast<double>(e.size());
  if (!(mean_quality > 0.0)) {
    throw Error(ErrorCode::kAlgorithm,
                "mean member similarity is " + format_double(mean_quality) +
                    "; the ensemble is too discordant to weight");
  }
  return mean_k / mean_quality;
}

WeightedCoassocMatrix build_weighted_coassoc(const ClusteringEnsemble& e, CoassocMode mode) {
  require_members(e);
  const std::size_t n = e.n();
  const std::size_t m = e.size();

  WeightedCoassocMatrix out;
  out.mode = mode;
  out.sim = Matrix(n, n, 0.0);

  if (mode == CoassocMode::kPlain) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        double count = 0.0;
        for (std::size_t p = 0; p < m; ++p) count += e[p][i] == e[p][j] ? 1.0 : 0.0;
        out.sim(i, j) = count;
        out.sim(j, i) = count;
      }
    }
    return out;
  }

  const ClusteringEnsemble cached = e.with_similarity();
  out.scale = build_scale_factor(cached);
  const std::vector<double> quality = quality_weights(cached);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double cluster_term = 0.0;
      double quality_term = 0.0;
      for (std::size_t p = 0; p < m; ++p) {
        if (e[p][i] != e[p][j]) continue;
        cluster_term += static_cast<double>(e[p].k());
        quality_term += quality[p];
      }
      const double v = cluster_term + 2.0 * out.scale * quality_term;
      out.sim(i, j) = v;
      out.sim(j, i) = v;
    }
  }
  return out;
}

ComponentResult connected_components(const WeightedCoassocMatrix& matrix, double threshold) {
  if (threshold < 0.0) throw Error(ErrorCode::kInvalidArgument, "threshold must be non-negative");
  const std::size_t n = matrix.n();
  std::vector<Label> component(n, 0);
  std::deque<std::size_t> queue;
  Label count = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (component[root] != 0) continue;
    component[root] = ++count;
    queue.push_back(root);
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v = 0; v < n; ++v) {
        if (component[v] == 0 && v != u && matrix.sim(u, v) > threshold) {
          component[v] = count;
          queue.push_back(v);
        }
      }
    }
  }
  return {static_cast<std::size_t>(count), Clustering(component)};
}

ThresholdSweepResult threshold_sweep(const WeightedCoassocMatrix& matrix, int t, int steps) {
  if (t < 2) throw Error(ErrorCode::kInvalidArgument, "sweep divisor t must be >= 2");
  if (steps < 2) throw Error(ErrorCode::kInvalidArgument, "sweep needs at least 2 steps");
  const double max_weight = matrix.max_weight();
  if (!(max_weight > 0.0)) {
    throw Error(ErrorCode::kAlgorithm, "co-association matrix has no edges to sweep");
  }
  const std::size_t n = matrix.n();
  const auto step_count = static_cast<std::size_t>(steps);
  const double lo = max_weight / static_cast<double>(t);

  ThresholdSweepResult result;
  result.steps.resize(step_count);
  for (std::size_t s = 0; s < step_count; ++s) {
    result.steps[s].threshold =
        s + 1 == step_count
            ? max_weight
            : lo + (max_weight - lo) * static_cast<double>(s) / static_cast<double>(step_count - 1);
  }

  // Walk thresholds downward, adding edges as they clear each threshold.
  struct Edge {
    double weight;
    std::size_t u, v;
  };
  std::vector<Edge> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (matrix.sim(i, j) > 0.0) edges.push_back({matrix.sim(i, j), i, j});
    }
  }
  std::sort(edges.begin(), edges.end(),
            [](const Edge& a, const Edge& b) { return a.weight > b.weight; });

  DisjointSets sets(n);
  std::size_t components = n;
  std::size_t next_edge = 0;
  for (std::size_t s = step_count; s-- > 0;) {
    const double threshold = result.steps[s].threshold;
    while (next_edge < edges.size() && edges[next_edge].weight > threshold) {
      if (sets.unite(edges[next_edge].u, edges[next_edge].v)) --components;
      ++next_edge;
    }
    result.steps[s].component_count = components;
  }

  std::size_t run = 0;
  for (std::size_t s = 0; s < step_count; ++s) {
    const std::size_t count = result.steps[s].component_count;
    run = (s > 0 && result.steps[s - 1].component_count == count) ? run + 1 : 1;
    auto& longest = result.stability[count];
    longest = std::max(longest, run);
  }
  std::size_t best_stability = 0;
  for (const auto& [count, stability] : result.stability) {
    if (stability > best_stability) {
      best_stability = stability;
      result.estimated_k = count;
    }
  }
  return result;
}

std::size_t estimate_cluster_count(const ClusteringEnsemble& e, const ThresholdSweepResult& sweep) {
  if (sweep.steps.empty()) throw Error(ErrorCode::kInvalidArgument, "empty threshold sweep");
  if (e.empty()) throw Error(ErrorCode::kInvalidArgument, "empty ensemble");

  std::size_t best_member = 0;
  if (e.size() >= 2) {
    const std::vector<double> quality = quality_weights(e);
    best_member = static_cast<std::size_t>(
        std::max_element(quality.begin(), quality.end()) - quality.begin());
  }
  const auto preferred = static_cast<std::size_t>(e[best_member].k());
  auto member_has = [&](std::size_t k) {
    return std::any_of(e.members().begin(), e.members().end(),
                       [&](const Clustering& c) { return static_cast<std::size_t>(c.k()) == k; });
  };

  std::size_t best_stability = 0;
  std::vector<std::size_t> tied;
  for (const auto& [count, stability] : sweep.stability) {
    if (!member_has(count)) continue;
    if (stability > best_stability) {
      best_stability = stability;
      tied.assign(1, count);
    } else if (stability == best_stability) {
      tied.push_back(count);
    }
  }
  if (tied.empty()) return preferred;
  if (std::find(tied.begin(), tied.end(), preferred) != tied.end()) return preferred;
  return tied.front();  // map order, so the smallest tied count
}

Clustering eac_baseline(const ClusteringEnsemble& e, std::size_t k) {
  if (e.empty()) throw Error(ErrorCode::kInvalidArgument, "empty ensemble");
  const std::size_t n = e.n();
  if (k < 1 || k > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "baseline cluster count " + std::to_string(k) + " outside [1, " +
                    std::to_string(n) + "]");
  }
  const auto m = static_cast<double>(e.size());
  Matrix dist(n, n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      double together = 0.0;
      for (const auto& member : e.members()) together += member[i] == member[j] ? 1.0 : 0.0;
      dist(i, j) = m - together;
      dist(j, i) = m - together;
    }
  }

  // Nearest-neighbor chain for average linkage. Each merge is recorded by
  // the representative objects of the two clusters; since average linkage is
  // reducible, replaying merges in height order reproduces the dendrogram.
  struct Merge {
    double height;
    std::size_t a, b;
  };
  std::vector<Merge> merges;
  merges.reserve(n - 1);
  std::vector<std::size_t> size(n, 1);
  std::vector<bool> active(n, true);
  std::vector<std::size_t> chain;
  std::size_t remaining = n;
  while (remaining > 1) {
    if (chain.empty()) {
      const auto first = static_cast<std::size_t>(std::find(active.begin(), active.end(), true) -
                                                  active.begin());
      chain.push_back(first);
    }
    const std::size_t a = chain.back();
    const std::size_t prev =
        chain.size() >= 2 ? chain[chain.size() - 2] : std::numeric_limits<std::size_t>::max();
    std::size_t b = prev;
    double best = b != std::numeric_limits<std::size_t>::max()
                      ? dist(a, b)
                      : std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < n; ++c) {
      if (!active[c] || c == a) continue;
      if (dist(a, c) < best) {
        best = dist(a, c);
        b = c;
      }
    }
    if (b != prev) {
      chain.push_back(b);
      continue;
    }
    chain.pop_back();
    chain.pop_back();
    merges.push_back({best, a, b});
    const std::size_t keep = std::min(a, b);
    const std::size_t drop = std::max(a, b);
    const auto sa = static_cast<double>(size[keep]);
    const auto sb = static_cast<double>(size[drop]);
    for (std::size_t c = 0; c < n; ++c) {
      if (!active[c] || c == keep || c == drop) continue;
      const double d = (sa * dist(keep, c) + sb * dist(drop, c)) / (sa + sb);
      dist(keep, c) = d;
      dist(c, keep) = d;
    }
    size[keep] += size[drop];
    active[drop] = false;
    --remaining;
  }

  std::stable_sort(merges.begin(), merges.end(),
                   [](const Merge& x, const Merge& y) { return x.height < y.height; });
  DisjointSets sets(n);
  for (std::size_t i = 0; i + k < n; ++i) sets.unite(merges[i].a, merges[i].b);
  return labels_from_sets(sets, n);
}

void write_sweep_csv(std::ostream& out, const ThresholdSweepResult& sweep) {
  out << "threshold,component_count\n";
  for (const auto& step : sweep.steps) {
    out << format_double(step.threshold) << ',' << step.component_count << '\n';
  }
}

}  // namespace consensus
