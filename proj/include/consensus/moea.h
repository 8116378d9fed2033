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

// NSGA-II over label-vector chromosomes. The two objectives are the mean ARI
// of a candidate against an ensemble (maximized) and the standard deviation
// of those ARI values (minimized).

#ifndef CONSENSUS_MOEA_H_
#define CONSENSUS_MOEA_H_

#include <optional>
#include <ostream>
#include <span>
#include <utility>
#include <vector>

#include "consensus/core.h"
#include "consensus/metrics.h"
#include "consensus/rng.h"

namespace consensus {

struct Chromosome {
  Clustering genes;  // canonical by construction
  std::optional<ObjectiveVector> objectives;
  std::size_t rank = 0;  // 1 = non-dominated
  double crowding = 0.0;
  std::size_t born = 0;  // generation in which the chromosome was created
};

// How clusters of the second parent are paired with the first parent's
// labels before crossover.
enum class MatchingStrategy {
  kGreedy,   // descending overlap, each side used once
  kOptimal,  // maximum total overlap (Hungarian)
};

// Which ensemble the objectives are measured against during the search.
enum class ObjectiveSource {
  kBase,
  kRefined,
  kUnion,  // base members plus the refined additions: the initial pool
};

struct GAConfig {
  double crossover_rate = 0.9;
  // Probability that a chromosome has one gene perturbed.
  double mutation_rate = 0.01;
  // 0 selects twice the base ensemble size (at least 4).
  std::size_t population_size = 0;
  std::size_t generations = 100;
  // Stop early once the rank-1 set is unchanged for this many generations;
  // 0 disables early stopping.
  std::size_t stall_generations = 20;
  // Half-width of the uniform perturbation added to a mutated label.
  double mutation_step = 1.5;
  MatchingStrategy matching = MatchingStrategy::kGreedy;
  ObjectiveSource objective_source = ObjectiveSource::kUnion;
  RandomSeed seed;

  // Throws kInvalidArgument on rates outside [0,1] or an explicit population
  // size that is odd or below 4.
  void validate() const;
  std::size_t resolved_population(std::size_t base_size) const;
};

struct ParetoSolution {
  Clustering genes;
  ObjectiveVector objectives;
  std::size_t generation = 0;  // generation in which it entered the population
};

struct ParetoFront {
  std::vector<ParetoSolution> solutions;
};

struct GenerationStats {
  std::size_t generation = 0;
  double best_mean_ari = 0.0;
  std::size_t front_size = 0;  // distinct rank-1 partitions
};

struct EvolutionResult {
  ParetoFront front;
  std::vector<GenerationStats> trace;  // entry 0 is the initial population
  std::size_t population_size = 0;
  std::size_t generations_run = 0;
};

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

// Sets `rank` on every chromosome and returns the fronts as index lists,
// best first. Throws if a chromosome has not been evaluated.
std::vector<std::vector<std::size_t>> fast_nondominated_sort(std::vector<Chromosome>& population);

// Assigns crowding distance to the chromosomes listed in `front`.
void crowding_distance(std::vector<Chromosome>& population, std::span<const std::size_t> front);
// Treats the whole vector as one front.
void crowding_distance(std::vector<Chromosome>& front);

// Crowded binary tournament; returns the winner's index.
std::size_t tournament_select(std::span<const Chromosome> population, Rng& rng);

// Labels of `other` rewritten on `target`'s vocabulary: matched clusters take
// the target label, unmatched ones take fresh labels above target.k().
std::vector<Label> align_to(const Clustering& other, const Clustering& target,
                            MatchingStrategy strategy = MatchingStrategy::kGreedy);

// Single-point crossover after aligning p2 onto p1; children take the first
// `cut` genes from one parent and the rest from the other.
std::pair<Clustering, Clustering> crossover_at(const Clustering& p1, const Clustering& p2,
                                               std::size_t cut,
                                               MatchingStrategy strategy = MatchingStrategy::kGreedy);

// With probability `rate`, crossover_at() at a uniform cut in [1, n-1];
// otherwise copies of the parents.
std::pair<Clustering, Clustering> crossover_bipartite(
    const Clustering& p1, const Clustering& p2, Rng& rng, double rate = 1.0,
    MatchingStrategy strategy = MatchingStrategy::kGreedy);

// With probability `rate`, one uniformly chosen gene gets a uniform offset in
// [-step, step], is rounded to the nearest integer and clamped to [1, k+1].
Clustering mutate(const Clustering& c, double rate, Rng& rng, double step = 1.5);
// The deterministic part of mutate(): adds `offset` to one gene, rounds,
// clamps and canonicalizes.
Clustering mutate_gene(const Clustering& c, std::size_t gene, double offset);

EvolutionResult evolve(const ClusteringEnsemble& base, const ClusteringEnsemble& refined,
                       const GAConfig& config);

// Index of the front member with the highest mean ARI against `base`; ties
// by lower std, then fewer clusters, then position.
std::size_t select_final_index(const ParetoFront& front, const ClusteringEnsemble& base);
Clustering select_final(const ParetoFront& front, const ClusteringEnsemble& base);

void write_front_csv(std::ostream& out, const ParetoFront& front);
void write_trace_csv(std::ostream& out, std::span<const GenerationStats> trace);

}  // namespace consensus

#endif  // CONSENSUS_MOEA_H_
