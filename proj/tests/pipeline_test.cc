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

#include "consensus/pipeline.h"

#include <sstream>
#include <vector>

#include "consensus/metrics.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "testing/generators.h"

namespace consensus {
namespace {

TEST(RunConsensusTest, IdenticalEnsembleReproducesMembers) {
  testing::TestRng rng(81);
  const auto truth = testing::planted_labels(60, 4, rng);
  std::vector<std::vector<Label>> members;
  for (int p = 0; p < 10; ++p) members.push_back(testing::permute_labels(truth, rng));
  const auto result = run_consensus(testing::make_ensemble(members), ConsensusOptions{});
  EXPECT_EQ(result.estimated_k, 4u);
  EXPECT_EQ(result.consensus, Clustering(truth));
  EXPECT_DOUBLE_EQ(result.consensus_vs_base.mean_ari, 1.0);
  EXPECT_EQ(result.baseline, Clustering(truth));
}

TEST(RunConsensusTest, NeedsTwoMembers) {
  EXPECT_THROW(run_consensus(ClusteringEnsemble({Clustering({1, 2})}), ConsensusOptions{}), Error);
}

TEST(RunConsensusTest, ModalKEnsembleEstimatesModalK) {
  testing::TestRng rng(82);
  const auto truth = testing::planted_labels(150, 5, rng);
  const auto base = testing::make_ensemble(testing::modal_k_ensemble(truth, 0.03, rng));
  ConsensusOptions options;
  options.ga.generations = 30;
  const auto result = run_consensus(base, options);
  EXPECT_EQ(result.estimated_k, 5u);
  EXPECT_EQ(result.refined.transformed.size(), 2u);
  EXPECT_GT(result.consensus_vs_base.mean_ari, 0.5);
}

TEST(ReportTest, TextAndJsonCarryComparisonRow) {
  testing::TestRng rng(83);
  const auto truth = testing::planted_labels(40, 3, rng);
  std::vector<std::vector<Label>> members;
  for (int p = 0; p < 4; ++p) members.push_back(testing::shuffle_fraction(truth, 0.1, rng));
  ConsensusOptions options;
  options.ga.generations = 10;
  const auto result = run_consensus(testing::make_ensemble(members), options);

  std::ostringstream text;
  write_report_text(text, result);
  EXPECT_NE(text.str().find("estimated k:"), std::string::npos);
  EXPECT_NE(text.str().find("proposed"), std::string::npos);
  EXPECT_NE(text.str().find("eac-al"), std::string::npos);

  std::ostringstream json_out;
  write_report_json(json_out, result);
  const auto doc = nlohmann::json::parse(json_out.str());
  EXPECT_EQ(doc["estimated_k"].get<std::size_t>(), result.estimated_k);
  EXPECT_EQ(doc["baselines"][0]["method"], "eac-al");
  EXPECT_DOUBLE_EQ(doc["proposed"]["mean_ari"].get<double>(), result.consensus_vs_base.mean_ari);
  EXPECT_EQ(doc["members"].size(), 4u);
}

TEST(RunGenerationTest, SamplesAndWritesManifest) {
  testing::TestRng rng(84);
  const auto blobs = testing::gaussian_blobs(300, 4, 3, 6.0, 1.0, rng);
  GenerationOptions options;
  options.plan.sample_size = 120;
  options.protocol.k_schedule = {4, 4, 4, 3, 5};
  options.protocol.seed = RandomSeed{7};
  const DataMatrix data(blobs.points, {});
  const auto result = run_generation(data, options);
  EXPECT_EQ(result.sample.n(), 120u);
  EXPECT_EQ(result.rows.size(), 120u);
  EXPECT_EQ(result.ensemble.ensemble.size(), 5u);
  EXPECT_EQ(result.quality.size(), 5u);
  for (std::size_t i = 0; i < 120; ++i) {
    EXPECT_EQ(result.sample.row(i)[0], data.row(result.rows[i])[0]);
  }

  const auto again = run_generation(data, options);
  EXPECT_EQ(again.rows, result.rows);
  EXPECT_EQ(again.ensemble.ensemble.members(), result.ensemble.ensemble.members());

  const auto dir = std::filesystem::temp_directory_path() / "consensus_generation_test";
  std::filesystem::remove_all(dir);
  const auto manifest_path = write_generation(dir, result, options);
  const auto manifest = read_manifest(manifest_path);
  EXPECT_EQ(manifest.members.size(), 5u);
  EXPECT_EQ(manifest.normalization, "minmax");
  const auto loaded = load_manifest_ensemble(manifest_path, manifest);
  EXPECT_EQ(loaded.members(), result.ensemble.ensemble.members());
  EXPECT_EQ(read_data_csv(dir / manifest.dataset).values(), result.sample.values());
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace consensus
