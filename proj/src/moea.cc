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

#include "consensus/moea.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "consensus/io.h"

namespace consensus {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const ObjectiveVector& objectives_of(const Chromosome& c) {
  if (!c.objectives) throw Error(ErrorCode::kInvalidArgument, "chromosome has not been evaluated");
  return *c.objectives;
}

std::vector<std::int64_t> overlap_counts(const Clustering& a, const Clustering& b) {
  const auto kb = static_cast<std::size_t>(b.k());
  std::vector<std::int64_t> counts(static_cast<std::size_t>(a.k()) * kb, 0);
  for (std::size_t i = 0; i < a.n(); ++i) {
    ++counts[static_cast<std::size_t>(a[i] - 1) * kb + static_cast<std::size_t>(b[i] - 1)];
  }
  return counts;
}

// Minimum-cost perfect assignment on a square matrix (rows to columns).
std::vector<std::size_t> hungarian(const std::vector<double>& cost, std::size_t size) {
  std::vector<double> u(size + 1, 0.0), v(size + 1, 0.0), way_cost(size + 1);
  std::vector<std::size_t> match(size + 1, 0), way(size + 1, 0);
  for (std::size_t row = 1; row <= size; ++row) {
    match[0] = row;
    std::size_t col0 = 0;
    std::fill(way_cost.begin(), way_cost.end(), kInf);
    std::vector<bool> used(size + 1, false);
    do {
      used[col0] = true;
      const std::size_t row0 = match[col0];
      double delta = kInf;
      std::size_t col1 = 0;
      for (std::size_t col = 1; col <= size; ++col) {
        if (used[col]) continue;
        const double cur = cost[(row0 - 1) * size + (col - 1)] - u[row0] - v[col];
        if (cur < way_cost[col]) {
          way_cost[col] = cur;
          way[col] = col0;
        }
        if (way_cost[col] < delta) {
          delta = way_cost[col];
          col1 = col;
        }
      }
      for (std::size_t col = 0; col <= size; ++col) {
        if (used[col]) {
          u[match[col]] += delta;
          v[col] -= delta;
        } else {
          way_cost[col] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const std::size_t col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }
  std::vector<std::size_t> row_to_col(size, 0);
  for (std::size_t col = 1; col <= size; ++col) row_to_col[match[col] - 1] = col - 1;
  return row_to_col;
}

void evaluate(std::vector<Chromosome>& population, const ClusteringEnsemble& target) {
  for (auto& c : population) {
    if (!c.objectives) c.objectives = objectives(c.genes, target);
  }
}

// Sorts, assigns crowding, and returns the fronts.
std::vector<std::vector<std::size_t>> rank_population(std::vector<Chromosome>& population) {
  auto fronts = fast_nondominated_sort(population);
  for (const auto& front : fronts) crowding_distance(population, front);
  return fronts;
}

// Elitist reduction to `target` chromosomes: whole fronts while they fit,
// then the least crowded members of the splitting front.
std::vector<Chromosome> environmental_selection(std::vector<Chromosome> pool, std::size_t target) {
  const auto fronts = rank_population(pool);
  std::vector<Chromosome> next;
  next.reserve(target);
  for (const auto& front : fronts) {
    if (next.size() + front.size() <= target) {
      for (std::size_t i : front) next.push_back(pool[i]);
      continue;
    }
    std::vector<std::size_t> order(front.begin(), front.end());
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return pool[a].crowding > pool[b].crowding;
    });
    for (std::size_t i = 0; next.size() < target; ++i) next.push_back(pool[order[i]]);
    break;
  }
  rank_population(next);
  return next;
}

std::set<Clustering> rank_one_set(const std::vector<Chromosome>& population) {
  std::set<Clustering> out;
  for (const auto& c : population) {
    if (c.rank == 1) out.insert(c.genes);
  }
  return out;
}

double best_mean(const std::vector<Chromosome>& population) {
  double best = -kInf;
  for (const auto& c : population) best = std::max(best, objectives_of(c).mean_ari);
  return best;
}

}  // namespace

void GAConfig::validate() const {
  auto check_rate = [](double r, const char* name) {
    if (!(r >= 0.0 && r <= 1.0)) {
      throw Error(ErrorCode::kInvalidArgument, std::string(name) + " must lie in [0, 1]");
    }
  };
  check_rate(crossover_rate, "crossover_rate");
  check_rate(mutation_rate, "mutation_rate");
  if (population_size != 0 && (population_size < 4 || population_size % 2 != 0)) {
    throw Error(ErrorCode::kInvalidArgument, "population size must be even and at least 4, got " +
                                                 std::to_string(population_size));
  }
  if (!(mutation_step > 0.0)) {
    throw Error(ErrorCode::kInvalidArgument, "mutation_step must be positive");
  }
}

std::size_t GAConfig::resolved_population(std::size_t base_size) const {
  if (population_size != 0) return population_size;
  return std::max<std::size_t>(4, 2 * base_size);
}

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  return a.mean_ari >= b.mean_ari && a.std_ari <= b.std_ari &&
         (a.mean_ari > b.mean_ari || a.std_ari < b.std_ari);
}

std::vector<std::vector<std::size_t>> fast_nondominated_sort(std::vector<Chromosome>& population) {
  const std::size_t size = population.size();
  std::vector<std::vector<std::size_t>> dominated(size);
  std::vector<std::size_t> domination_count(size, 0);
  std::vector<std::vector<std::size_t>> fronts(1);
  for (std::size_t p = 0; p < size; ++p) {
    const auto& op = objectives_of(population[p]);
    for (std::size_t q = 0; q < size; ++q) {
      if (p == q) continue;
      const auto& oq = objectives_of(population[q]);
      if (dominates(op, oq)) {
        dominated[p].push_back(q);
      } else if (dominates(oq, op)) {
        ++domination_count[p];
      }
    }
    if (domination_count[p] == 0) {
      population[p].rank = 1;
      fronts[0].push_back(p);
    }
  }
  for (std::size_t f = 0; !fronts[f].empty(); ++f) {
    std::vector<std::size_t> next;
    for (std::size_t p : fronts[f]) {
      for (std::size_t q : dominated[p]) {
        if (--domination_count[q] == 0) {
          population[q].rank = f + 2;
          next.push_back(q);
        }
      }
    }
    std::sort(next.begin(), next.end());
    fronts.push_back(std::move(next));
  }
  fronts.pop_back();
  return fronts;
}

void crowding_distance(std::vector<Chromosome>& population, std::span<const std::size_t> front) {
  for (std::size_t i : front) population[i].crowding = 0.0;
  if (front.size() <= 2) {
    for (std::size_t i : front) population[i].crowding = kInf;
    return;
  }
  std::vector<std::size_t> order(front.begin(), front.end());
  const auto mean_of = [&](std::size_t i) { return objectives_of(population[i]).mean_ari; };
  const auto std_of = [&](std::size_t i) { return objectives_of(population[i]).std_ari; };
  for (const auto& value : {std::function<double(std::size_t)>(mean_of),
                            std::function<double(std::size_t)>(std_of)}) {
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return value(a) < value(b); });
    const double range = value(order.back()) - value(order.front());
    if (!(range > 0.0)) continue;
    population[order.front()].crowding = kInf;
    population[order.back()].crowding = kInf;
    for (std::size_t i = 1; i + 1 < order.size(); ++i) {
      population[order[i]].crowding += (value(order[i + 1]) - value(order[i - 1])) / range;
    }
  }
}

void crowding_distance(std::vector<Chromosome>& front) {
  std::vector<std::size_t> all(front.size());
  std::iota(all.begin(), all.end(), std::size_t{0});
  crowding_distance(front, all);
}

std::size_t tournament_select(std::span<const Chromosome> population, Rng& rng) {
  if (population.empty()) throw Error(ErrorCode::kInvalidArgument, "empty population");
  const std::size_t a = rng.below(population.size());
  const std::size_t b = rng.below(population.size());
  const auto& ca = population[a];
  const auto& cb = population[b];
  if (ca.rank != cb.rank) return ca.rank < cb.rank ? a : b;
  if (ca.crowding != cb.crowding) return ca.crowding > cb.crowding ? a : b;
  return rng.coin() ? a : b;
}

std::vector<Label> align_to(const Clustering& other, const Clustering& target,
                            MatchingStrategy strategy) {
  if (other.n() != target.n()) {
    throw Error(ErrorCode::kSizeMismatch, "crossover parents cover different object counts");
  }
  const auto ko = static_cast<std::size_t>(other.k());
  const auto kt = static_cast<std::size_t>(target.k());
  const std::vector<std::int64_t> overlap = overlap_counts(other, target);
  std::vector<Label> mapping(ko, 0);

  if (strategy == MatchingStrategy::kGreedy) {
    struct Edge {
      std::int64_t weight;
      std::size_t o, t;
    };
    std::vector<Edge> edges;
    for (std::size_t o = 0; o < ko; ++o) {
      for (std::size_t t = 0; t < kt; ++t) {
        if (overlap[o * kt + t] > 0) edges.push_back({overlap[o * kt + t], o, t});
      }
    }
    std::stable_sort(edges.begin(), edges.end(),
                     [](const Edge& a, const Edge& b) { return a.weight > b.weight; });
    std::vector<bool> target_used(kt, false);
    for (const auto& e : edges) {
      if (mapping[e.o] != 0 || target_used[e.t]) continue;
      mapping[e.o] = static_cast<Label>(e.t + 1);
      target_used[e.t] = true;
    }
  } else {
    const std::size_t size = std::max(ko, kt);
    std::vector<double> cost(size * size, 0.0);
    for (std::size_t o = 0; o < ko; ++o) {
      for (std::size_t t = 0; t < kt; ++t) {
        cost[o * size + t] = -static_cast<double>(overlap[o * kt + t]);
      }
    }
    const auto assignment = hungarian(cost, size);
    for (std::size_t o = 0; o < ko; ++o) {
      const std::size_t t = assignment[o];
      if (t < kt && overlap[o * kt + t] > 0) mapping[o] = static_cast<Label>(t + 1);
    }
  }

  Label fresh = target.k();
  for (auto& m : mapping) {
    if (m == 0) m = ++fresh;
  }
  std::vector<Label> out(other.n());
  for (std::size_t i = 0; i < other.n(); ++i) out[i] = mapping[static_cast<std::size_t>(other[i] - 1)];
  return out;
}

std::pair<Clustering, Clustering> crossover_at(const Clustering& p1, const Clustering& p2,
                                               std::size_t cut, MatchingStrategy strategy) {
  const std::vector<Label> aligned = align_to(p2, p1, strategy);
  if (cut > p1.n()) throw Error(ErrorCode::kInvalidArgument, "crossover cut beyond chromosome");
  std::vector<Label> child1(p1.labels().begin(), p1.labels().begin() + static_cast<long>(cut));
  child1.insert(child1.end(), aligned.begin() + static_cast<long>(cut), aligned.end());
  std::vector<Label> child2(aligned.begin(), aligned.begin() + static_cast<long>(cut));
  child2.insert(child2.end(), p1.labels().begin() + static_cast<long>(cut), p1.labels().end());
  return {Clustering(child1), Clustering(child2)};
}

std::pair<Clustering, Clustering> crossover_bipartite(const Clustering& p1, const Clustering& p2,
                                                      Rng& rng, double rate,
                                                      MatchingStrategy strategy) {
  if (p1.n() != p2.n()) {
    throw Error(ErrorCode::kSizeMismatch, "crossover parents cover different object counts");
  }
  if (p1.n() < 2 || rng.uniform() >= rate) return {p1, p2};
  const std::size_t cut = 1 + rng.below(p1.n() - 1);
  return crossover_at(p1, p2, cut, strategy);
}

Clustering mutate_gene(const Clustering& c, std::size_t gene, double offset) {
  if (gene >= c.n()) throw Error(ErrorCode::kInvalidArgument, "gene index out of range");
  const auto rounded = static_cast<Label>(std::lround(static_cast<double>(c[gene]) + offset));
  std::vector<Label> labels = c.labels();
  labels[gene] = std::clamp<Label>(rounded, 1, c.k() + 1);
  return Clustering(labels);
}

Clustering mutate(const Clustering& c, double rate, Rng& rng, double step) {
  if (rate <= 0.0 || rng.uniform() >= rate) return c;
  const std::size_t gene = rng.below(c.n());
  return mutate_gene(c, gene, rng.uniform(-step, step));
}

EvolutionResult evolve(const ClusteringEnsemble& base, const ClusteringEnsemble& refined,
                       const GAConfig& config) {
  config.validate();
  if (base.empty()) throw Error(ErrorCode::kInvalidArgument, "base ensemble is empty");
  if (!refined.empty() && refined.n() != base.n()) {
    throw Error(ErrorCode::kSizeMismatch, "base and refined ensembles cover different objects");
  }

  // Refined ensembles normally start with the base members; those are not
  // added twice.
  std::vector<Clustering> pool = base.members();
  for (std::size_t i = 0; i < refined.size(); ++i) {
    if (i < base.size() && refined[i] == base[i]) continue;
    pool.push_back(refined[i]);
  }
  ClusteringEnsemble target;
  switch (config.objective_source) {
    case ObjectiveSource::kBase: target = base; break;
    case ObjectiveSource::kRefined: target = refined.empty() ? base : refined; break;
    case ObjectiveSource::kUnion: target = ClusteringEnsemble(pool); break;
  }

  const std::size_t population_size = config.resolved_population(base.size());
  Rng init_rng = Rng(config.seed).split(1);
  Rng loop_rng = Rng(config.seed).split(2);

  std::vector<Chromosome> population;
  for (const auto& c : pool) population.push_back({c, std::nullopt, 0, 0.0, 0});
  for (std::size_t i = 0; population.size() < population_size; ++i) {
    population.push_back({mutate(pool[i % pool.size()], 1.0, init_rng, config.mutation_step),
                          std::nullopt, 0, 0.0, 0});
  }
  evaluate(population, target);
  population = environmental_selection(std::move(population), population_size);

  EvolutionResult result;
  result.population_size = population_size;
  auto front_set = rank_one_set(population);
  result.trace.push_back({0, best_mean(population), front_set.size()});

  std::size_t stall = 0;
  for (std::size_t gen = 1; gen <= config.generations; ++gen) {
    std::vector<Chromosome> offspring;
    offspring.reserve(population_size);
    while (offspring.size() < population_size) {
      const auto& a = population[tournament_select(population, loop_rng)];
      const auto& b = population[tournament_select(population, loop_rng)];
      auto [c1, c2] = crossover_bipartite(a.genes, b.genes, loop_rng, config.crossover_rate,
                                          config.matching);
      for (auto* child : {&c1, &c2}) {
        if (offspring.size() == population_size) break;
        offspring.push_back({mutate(*child, config.mutation_rate, loop_rng, config.mutation_step),
                             std::nullopt, 0, 0.0, gen});
      }
    }
    evaluate(offspring, target);
    std::vector<Chromosome> combined = std::move(population);
    combined.insert(combined.end(), std::make_move_iterator(offspring.begin()),
                    std::make_move_iterator(offspring.end()));
    population = environmental_selection(std::move(combined), population_size);

    auto next_set = rank_one_set(population);
    stall = next_set == front_set ? stall + 1 : 0;
    front_set = std::move(next_set);
    result.trace.push_back({gen, best_mean(population), front_set.size()});
    result.generations_run = gen;
    if (config.stall_generations != 0 && stall >= config.stall_generations) break;
  }

  // One entry per distinct rank-1 partition, keeping its earliest arrival.
  std::vector<const Chromosome*> best;
  for (const auto& c : population) {
    if (c.rank != 1) continue;
    auto same = std::find_if(best.begin(), best.end(),
                             [&](const Chromosome* b) { return b->genes == c.genes; });
    if (same == best.end()) {
      best.push_back(&c);
    } else if (c.born < (*same)->born) {
      *same = &c;
    }
  }
  std::sort(best.begin(), best.end(), [](const Chromosome* a, const Chromosome* b) {
    const auto& oa = *a->objectives;
    const auto& ob = *b->objectives;
    if (oa.mean_ari != ob.mean_ari) return oa.mean_ari > ob.mean_ari;
    if (oa.std_ari != ob.std_ari) return oa.std_ari < ob.std_ari;
    if (a->genes.k() != b->genes.k()) return a->genes.k() < b->genes.k();
    return a->genes < b->genes;
  });
  for (const auto* c : best) result.front.solutions.push_back({c->genes, *c->objectives, c->born});
  return result;
}

std::size_t select_final_index(const ParetoFront& front, const ClusteringEnsemble& base) {
  if (front.solutions.empty()) throw Error(ErrorCode::kInvalidArgument, "empty Pareto front");
  std::size_t best = 0;
  ObjectiveVector best_obj = objectives(front.solutions[0].genes, base);
  for (std::size_t i = 1; i < front.solutions.size(); ++i) {
    const ObjectiveVector obj = objectives(front.solutions[i].genes, base);
    const auto k = front.solutions[i].genes.k();
    const auto best_k = front.solutions[best].genes.k();
    const bool better =
        obj.mean_ari > best_obj.mean_ari ||
        (obj.mean_ari == best_obj.mean_ari &&
         (obj.std_ari < best_obj.std_ari || (obj.std_ari == best_obj.std_ari && k < best_k)));
    if (better) {
      best = i;
      best_obj = obj;
    }
  }
  return best;
}

Clustering select_final(const ParetoFront& front, const ClusteringEnsemble& base) {
  return front.solutions[select_final_index(front, base)].genes;
}

void write_front_csv(std::ostream& out, const ParetoFront& front) {
  out << "mean_ari,std_ari,k,generation\n";
  for (const auto& s : front.solutions) {
    out << format_double(s.objectives.mean_ari) << ',' << format_double(s.objectives.std_ari)
        << ',' << s.genes.k() << ',' << s.generation << '\n';
  }
}

void write_trace_csv(std::ostream& out, std::span<const GenerationStats> trace) {
  out << "generation,best_mean_ari,front_size\n";
  for (const auto& g : trace) {
    out << g.generation << ',' << format_double(g.best_mean_ari) << ',' << g.front_size << '\n';
  }
}

}  // namespace consensus
