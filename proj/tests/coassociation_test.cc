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

#include <sstream>
#include <vector>

#include "consensus/metrics.h"
#include "gtest/gtest.h"
#include "testing/generators.h"
#include "testing/oracles.h"

namespace consensus {
namespace {

ClusteringEnsemble worked_example() {
  return ClusteringEnsemble({Clustering({1, 1, 2, 2}), Clustering({1, 2, 3, 3})});
}

TEST(ScaleFactorTest, WorkedExample) {
  const double ari = testing::brute_force_ari({1, 1, 2, 2}, {1, 2, 3, 3});
  EXPECT_NEAR(build_scale_factor(worked_example()), 2.5 / ari, 1e-12);
  EXPECT_NEAR(build_scale_factor(worked_example()), 4.375, 1e-9);
}

TEST(ScaleFactorTest, IdenticalMembersGiveK) {
  const Clustering c({1, 2, 3, 4, 1, 2});
  EXPECT_DOUBLE_EQ(build_scale_factor(ClusteringEnsemble({c, c, c})), 4.0);
}

TEST(ScaleFactorTest, NonPositiveMeanQualityIsAlgorithmError) {
  // Two complementary partitions: ARI is negative.
  const ClusteringEnsemble e({Clustering({1, 1, 2, 2}), Clustering({1, 2, 1, 2})});
  try {
    build_scale_factor(e);
    FAIL() << "expected an error";
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::kAlgorithm);
  }
}

TEST(WeightedCoassocTest, WorkedExample) {
  const auto m = build_weighted_coassoc(worked_example());
  EXPECT_NEAR(m.scale, 4.375, 1e-9);
  EXPECT_NEAR(m.sim(2, 3), 15.0, 1e-9);
  EXPECT_NEAR(m.sim(0, 1), 7.0, 1e-9);
  EXPECT_EQ(m.sim(0, 2), 0.0);
  EXPECT_NEAR(m.max_weight(), 15.0, 1e-9);
}

TEST(WeightedCoassocTest, PlainModeCountsCoOccurrence) {
  const auto m = build_weighted_coassoc(worked_example(), CoassocMode::kPlain);
  EXPECT_EQ(m.sim(2, 3), 2.0);
  EXPECT_EQ(m.sim(0, 1), 1.0);
  EXPECT_EQ(m.sim(0, 2), 0.0);
  EXPECT_EQ(m.scale, 1.0);
}

TEST(WeightedCoassocTest, MatchesDefinitionOnRandomEnsembles) {
  testing::TestRng rng(21);
  int checked = 0;
  while (checked < 60) {
    const std::size_t n = testing::uniform_size(rng, 3, 15);
    const std::size_t m = testing::uniform_size(rng, 2, 6);
    const auto members = testing::random_planted_ensemble(n, m, rng);
    const auto oracle = testing::brute_force_coassoc(members);
    if (!(oracle.scale > 0.0)) continue;
    ++checked;
    const auto got = build_weighted_coassoc(testing::make_ensemble(members));
    EXPECT_NEAR(got.scale, oracle.scale, 1e-9 * oracle.scale);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_EQ(got.sim(i, i), 0.0);
      for (std::size_t j = 0; j < n; ++j) {
        EXPECT_NEAR(got.sim(i, j), oracle.sim[i][j], 1e-9 * (1.0 + std::abs(oracle.sim[i][j])));
        EXPECT_EQ(got.sim(i, j), got.sim(j, i));
      }
    }
  }
}

TEST(ConnectedComponentsTest, Examples) {
  const auto m = build_weighted_coassoc(worked_example());
  EXPECT_EQ(connected_components(m, 100.0).count, 4u);
  const auto at8 = connected_components(m, 8.0);
  EXPECT_EQ(at8.count, 3u);
  EXPECT_EQ(at8.labels, Clustering({1, 2, 3, 3}));

  const Clustering c({1, 1, 2, 2, 3, 3});
  const auto same = build_weighted_coassoc(ClusteringEnsemble({c, c, c}));
  const auto at0 = connected_components(same, 0.0);
  EXPECT_EQ(at0.count, 3u);
  EXPECT_EQ(at0.labels, c);

  EXPECT_THROW(connected_components(m, -1.0), Error);
}

TEST(ConnectedComponentsTest, MatchesRelaxationOracle) {
  testing::TestRng rng(22);
  for (int trial = 0; trial < 50; ++trial) {
    const auto members = testing::random_planted_ensemble(12, 4, rng);
    const auto plain = build_weighted_coassoc(testing::make_ensemble(members), CoassocMode::kPlain);
    std::vector<std::vector<double>> sim(12, std::vector<double>(12));
    for (std::size_t i = 0; i < 12; ++i) {
      for (std::size_t j = 0; j < 12; ++j) sim[i][j] = plain.sim(i, j);
    }
    for (double t : {0.0, 0.5, 1.0, 2.0, 3.0, 3.5}) {
      EXPECT_EQ(connected_components(plain, t).count, testing::brute_force_components(sim, t));
    }
  }
}

TEST(ThresholdSweepTest, WorkedExampleRunLengths) {
  const auto m = build_weighted_coassoc(worked_example());
  const auto sweep = threshold_sweep(m, 10, 100);
  ASSERT_EQ(sweep.steps.size(), 100u);
  EXPECT_NEAR(sweep.steps.front().threshold, 1.5, 1e-9);
  EXPECT_EQ(sweep.steps.back().threshold, m.max_weight());
  EXPECT_EQ(sweep.steps.front().component_count, 2u);
  EXPECT_EQ(sweep.steps.back().component_count, 4u);
  // Thresholds 1.5 + i * 13.5 / 99: i <= 40 lie below 7.0, i <= 98 below 15.
  EXPECT_EQ(sweep.stability.at(2), 41u);
  EXPECT_EQ(sweep.stability.at(3), 58u);
  EXPECT_EQ(sweep.stability.at(4), 1u);
  EXPECT_EQ(sweep.estimated_k, 3u);
}

TEST(ThresholdSweepTest, IdenticalMembersAreStableEverywhere) {
  const Clustering c({1, 2, 3, 1, 2, 3});
  const auto sweep = threshold_sweep(build_weighted_coassoc(ClusteringEnsemble({c, c})), 10, 50);
  // Every same-cluster pair sits exactly at the maximum, so only the last
  // step (threshold == max, strict comparison) falls apart into singletons.
  EXPECT_EQ(sweep.stability.size(), 2u);
  EXPECT_EQ(sweep.stability.at(3), 49u);
  EXPECT_EQ(sweep.stability.at(6), 1u);
}

TEST(ThresholdSweepTest, CountsMatchOracleAndAreMonotone) {
  testing::TestRng rng(23);
  int checked = 0;
  while (checked < 40) {
    const auto members = testing::random_planted_ensemble(15, 5, rng);
    const auto oracle = testing::brute_force_coassoc(members);
    if (!(oracle.scale > 0.0)) continue;
    ++checked;
    const auto m = build_weighted_coassoc(testing::make_ensemble(members));
    // Entries equal the oracle's up to rounding (checked above); use the
    // library's values so ties at the top threshold compare exactly.
    std::vector<std::vector<double>> sim(m.n(), std::vector<double>(m.n()));
    for (std::size_t i = 0; i < m.n(); ++i) {
      for (std::size_t j = 0; j < m.n(); ++j) sim[i][j] = m.sim(i, j);
    }
    const auto sweep = threshold_sweep(m, 10, 30);
    for (std::size_t s = 0; s < sweep.steps.size(); ++s) {
      EXPECT_EQ(sweep.steps[s].component_count,
                testing::brute_force_components(sim, sweep.steps[s].threshold));
      if (s > 0) {
        EXPECT_GE(sweep.steps[s].component_count, sweep.steps[s - 1].component_count);
        EXPECT_GT(sweep.steps[s].threshold, sweep.steps[s - 1].threshold);
      }
    }
  }
}

TEST(ThresholdSweepTest, RejectsBadParameters) {
  const auto m = build_weighted_coassoc(worked_example());
  EXPECT_THROW(threshold_sweep(m, 1, 100), Error);
  EXPECT_THROW(threshold_sweep(m, 10, 1), Error);
  const auto singletons =
      build_weighted_coassoc(ClusteringEnsemble({Clustering({1, 2, 3}), Clustering({1, 2, 3})}));
  EXPECT_THROW(threshold_sweep(singletons), Error);
}

TEST(EstimateClusterCountTest, IdenticalMembers) {
  testing::TestRng rng(24);
  const auto truth = testing::planted_labels(40, 4, rng);
  std::vector<std::vector<Label>> members;
  for (int p = 0; p < 5; ++p) members.push_back(testing::permute_labels(truth, rng));
  const auto e = testing::make_ensemble(members);
  EXPECT_EQ(estimate_cluster_count(e, threshold_sweep(build_weighted_coassoc(e))), 4u);
}

TEST(EstimateClusterCountTest, ModalKShape) {
  testing::TestRng rng(25);
  const auto truth = testing::planted_labels(200, 5, rng);
  const auto e = testing::make_ensemble(testing::modal_k_ensemble(truth, 0.02, rng));
  EXPECT_EQ(estimate_cluster_count(e, threshold_sweep(build_weighted_coassoc(e))), 5u);
}

TEST(EstimateClusterCountTest, StabilityTieGoesToBestMembersK) {
  const Clustering five({1, 1, 2, 2, 3, 3, 4, 4, 5, 5});
  const Clustering three({1, 1, 1, 1, 2, 2, 2, 2, 3, 3});
  const ClusteringEnsemble e({three, five, five});
  ThresholdSweepResult sweep;
  sweep.steps.resize(1);  // only the stability table is consulted
  sweep.stability = {{3, 10}, {5, 10}};
  sweep.estimated_k = 3;
  EXPECT_EQ(estimate_cluster_count(e, sweep), 5u);
  // Without the k=5 members the highest-quality member has 3 clusters.
  const Clustering three_b({1, 1, 1, 1, 2, 2, 2, 3, 3, 3});
  EXPECT_EQ(estimate_cluster_count(ClusteringEnsemble({three, three, three_b}), sweep), 3u);
}

TEST(EstimateClusterCountTest, OnlyMemberCountsAreCandidates) {
  const Clustering a({1, 1, 2, 2, 3, 3});
  const Clustering b({1, 1, 2, 2, 3, 4});
  ThresholdSweepResult sweep;
  sweep.steps.resize(1);  // only the stability table is consulted
  sweep.stability = {{2, 50}, {3, 20}, {4, 5}};
  EXPECT_EQ(estimate_cluster_count(ClusteringEnsemble({a, b}), sweep), 3u);
  // No swept count matches a member: fall back to the best member.
  sweep.stability = {{2, 50}};
  EXPECT_EQ(estimate_cluster_count(ClusteringEnsemble({a, a, b}), sweep), 3u);
}

TEST(EacBaselineTest, EdgeCounts) {
  const ClusteringEnsemble e({Clustering({1, 1, 2, 2, 3}), Clustering({1, 2, 2, 3, 3})});
  EXPECT_EQ(eac_baseline(e, 5), Clustering({1, 2, 3, 4, 5}));
  EXPECT_EQ(eac_baseline(e, 1), Clustering({1, 1, 1, 1, 1}));
  EXPECT_THROW(eac_baseline(e, 0), Error);
  EXPECT_THROW(eac_baseline(e, 6), Error);
}

TEST(EacBaselineTest, RecoversSharedPartition) {
  testing::TestRng rng(26);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t K = testing::uniform_size(rng, 2, 6);
    const auto truth = testing::planted_labels(30, K, rng);
    std::vector<std::vector<Label>> members;
    for (int p = 0; p < 4; ++p) members.push_back(testing::permute_labels(truth, rng));
    EXPECT_EQ(eac_baseline(testing::make_ensemble(members), K), Clustering(truth));
  }
}

TEST(EacBaselineTest, AlwaysReturnsRequestedK) {
  testing::TestRng rng(27);
  for (int trial = 0; trial < 30; ++trial) {
    const auto members = testing::random_planted_ensemble(20, 5, rng);
    const std::size_t k = testing::uniform_size(rng, 1, 20);
    const auto c = eac_baseline(testing::make_ensemble(members), k);
    EXPECT_EQ(static_cast<std::size_t>(c.k()), k);
    EXPECT_EQ(c.n(), 20u);
  }
}

TEST(SweepCsvTest, WritesHeaderAndRows) {
  const auto sweep = threshold_sweep(build_weighted_coassoc(worked_example()), 10, 3);
  std::ostringstream out;
  write_sweep_csv(out, sweep);
  EXPECT_EQ(out.str().substr(0, 26), "threshold,component_count\n");
  int lines = 0;
  for (char ch : out.str()) lines += ch == '\n';
  EXPECT_EQ(lines, 4);
}

}  // namespace
}  // namespace consensus
