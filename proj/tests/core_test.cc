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

#include "consensus/core.h"

#include <cmath>
#include <limits>
#include <vector>

#include "gtest/gtest.h"
#include "testing/generators.h"
#include "testing/oracles.h"

namespace consensus {
namespace {

TEST(ClusteringTest, CanonicalizesByFirstAppearance) {
  EXPECT_EQ(Clustering({3, 3, 2, 2, 2, 1, 1, 1}).labels(),
            (std::vector<Label>{1, 1, 2, 2, 2, 3, 3, 3}));
  EXPECT_EQ(Clustering({1, 1, 2, 2}).labels(), (std::vector<Label>{1, 1, 2, 2}));
  EXPECT_EQ(Clustering({5, 9, 5, 9, 9}).labels(), (std::vector<Label>{1, 2, 1, 2, 2}));
}

TEST(ClusteringTest, CountsClusters) {
  const Clustering c({7, 7, 3, 9});
  EXPECT_EQ(c.n(), 4u);
  EXPECT_EQ(c.k(), 3);
  EXPECT_EQ(c.cluster_sizes(), (std::vector<std::size_t>{2, 1, 1}));
}

TEST(ClusteringTest, RejectsEmptyAndNonPositiveLabels) {
  EXPECT_THROW(Clustering(std::vector<Label>{}), Error);
  EXPECT_THROW(Clustering({1, 0, 2}), Error);
  EXPECT_THROW(Clustering({1, -3}), Error);
}

TEST(ClusteringTest, CanonicalizeIsIdempotent) {
  testing::TestRng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const auto raw = testing::random_labels(testing::uniform_size(rng, 1, 20), 6, rng);
    const Clustering once = canonicalize(raw);
    EXPECT_EQ(canonicalize(once.labels()), once);
    EXPECT_TRUE(testing::same_co_membership(raw, once.labels()));
    EXPECT_EQ(once[0], 1);
  }
}

TEST(PartitionEqualTest, Examples) {
  EXPECT_TRUE(partition_equal(Clustering({2, 2, 3, 3, 3, 1, 1, 1}),
                              Clustering({3, 3, 2, 2, 2, 1, 1, 1})));
  EXPECT_FALSE(partition_equal(Clustering({1, 1, 2, 2}), Clustering({1, 2, 1, 2})));
  EXPECT_TRUE(partition_equal(Clustering({1}), Clustering({1})));
  EXPECT_THROW(partition_equal(Clustering({1, 1}), Clustering({1})), Error);
}

TEST(PartitionEqualTest, MatchesCoMembershipOracle) {
  testing::TestRng rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = testing::uniform_size(rng, 1, 8);
    const auto a = testing::random_labels(n, 3, rng);
    const auto b = trial % 2 == 0 ? testing::permute_labels(a, rng)
                                  : testing::random_labels(n, 3, rng);
    EXPECT_EQ(partition_equal(Clustering(a), Clustering(b)), testing::same_co_membership(a, b));
  }
}

TEST(DataMatrixTest, DefaultsFeatureNames) {
  DataMatrix d(Matrix(2, 3, 1.0), {});
  EXPECT_EQ(d.feature_names(), (std::vector<std::string>{"f0", "f1", "f2"}));
}

TEST(DataMatrixTest, RejectsNonFiniteAndEmpty) {
  Matrix m(2, 2, 0.0);
  m(1, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(DataMatrix(m, {}), Error);
  EXPECT_THROW(DataMatrix(Matrix(0, 2), {}), Error);
  EXPECT_THROW(DataMatrix(Matrix(2, 2), {"only_one"}), Error);
}

TEST(DataMatrixTest, SelectRowsKeepsOrder) {
  Matrix m(3, 1);
  m(0, 0) = 10;
  m(1, 0) = 20;
  m(2, 0) = 30;
  const DataMatrix d(m, {"x"});
  const std::vector<std::size_t> rows{2, 0};
  const DataMatrix s = d.select_rows(rows);
  ASSERT_EQ(s.n(), 2u);
  EXPECT_EQ(s.row(0)[0], 30);
  EXPECT_EQ(s.row(1)[0], 10);
}

TEST(ClusteringEnsembleTest, RejectsMixedSizes) {
  EXPECT_THROW(ClusteringEnsemble({Clustering({1, 2}), Clustering({1, 2, 3})}), Error);
}

TEST(ClusteringEnsembleTest, CachesSimilarity) {
  const ClusteringEnsemble e({Clustering({1, 1, 2, 2}), Clustering({1, 2, 3, 3})});
  EXPECT_FALSE(e.similarity().has_value());
  const auto cached = e.with_similarity();
  ASSERT_TRUE(cached.similarity().has_value());
  EXPECT_EQ(cached.similarity()->rows(), 2u);
}

}  // namespace
}  // namespace consensus
