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

// End-to-end stages: data -> sampled base ensemble on disk, and base
// ensemble -> estimated k, refined ensemble, Pareto front, consensus and
// baseline comparison.

#ifndef CONSENSUS_PIPELINE_H_
#define CONSENSUS_PIPELINE_H_

#include <filesystem>
#include <ostream>
#include <vector>

#include "consensus/base_generation.h"
#include "consensus/coassociation.h"
#include "consensus/core.h"
#include "consensus/io.h"
#include "consensus/moea.h"
#include "consensus/relabel.h"

namespace consensus {

struct GenerationOptions {
  // sample_size 0 keeps every row in its original order.
  StratificationPlan plan;
  EnsembleProtocol protocol;  // protocol.seed is the root seed of the stage
  std::vector<std::size_t> one_hot_columns;
};

struct GenerationResult {
  DataMatrix sample;
  std::vector<std::size_t> rows;  // source row of each sampled object
  GeneratedEnsemble ensemble;
  std::vector<double> quality;  // per member; empty for a single member
};

GenerationResult run_generation(const DataMatrix& data, const GenerationOptions& options);

// Writes sample.csv, member_NN.csv and manifest.json into `dir`. Returns the
// manifest path.
std::filesystem::path write_generation(const std::filesystem::path& dir,
                                       const GenerationResult& result,
                                       const GenerationOptions& options);

struct ConsensusOptions {
  int sweep_divisor = kDefaultSweepDivisor;
  int sweep_steps = kDefaultSweepSteps;
  bool dedupe_refined = true;
  GAConfig ga;
};

struct ConsensusResult {
  std::vector<double> member_quality;
  double scale_factor = 0.0;
  ThresholdSweepResult sweep;
  std::size_t estimated_k = 0;
  RefinedEnsemble refined;
  EvolutionResult evolution;
  Clustering consensus;
  ObjectiveVector consensus_vs_base;
  Clustering baseline;  // evidence accumulation at estimated_k
  ObjectiveVector baseline_vs_base;
};

ConsensusResult run_consensus(const ClusteringEnsemble& base, const ConsensusOptions& options);

void write_report_text(std::ostream& out, const ConsensusResult& result);
void write_report_json(std::ostream& out, const ConsensusResult& result);

}  // namespace consensus

#endif  // CONSENSUS_PIPELINE_H_
