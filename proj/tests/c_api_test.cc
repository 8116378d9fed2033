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

// Exercises libconsensus through its C interface only.

#include "consensus/consensus.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "gtest/gtest.h"

namespace {

std::filesystem::path temp_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

cns_clustering* make(const std::vector<int32_t>& labels) {
  cns_clustering* c = nullptr;
  EXPECT_EQ(cns_clustering_create(labels.data(), labels.size(), &c), CNS_OK);
  return c;
}

TEST(CApiTest, VersionAndStatusNames) {
  EXPECT_STREQ(cns_version(), "1.0.0");
  EXPECT_STREQ(cns_status_name(CNS_OK), "ok");
  EXPECT_STREQ(cns_status_name(CNS_ERR_ALGORITHM), "algorithm error");
}

TEST(CApiTest, ClusteringRoundTrip) {
  cns_clustering* c = make({5, 5, 9, 2});
  EXPECT_EQ(cns_clustering_size(c), 4u);
  EXPECT_EQ(cns_clustering_k(c), 3);
  int32_t out[4];
  ASSERT_EQ(cns_clustering_labels(c, out, 4), CNS_OK);
  EXPECT_EQ(std::vector<int32_t>(out, out + 4), (std::vector<int32_t>{1, 1, 2, 3}));
  EXPECT_EQ(cns_clustering_labels(c, out, 2), CNS_ERR_SIZE_MISMATCH);
  cns_clustering_free(c);
}

TEST(CApiTest, InvalidLabelsSetLastError) {
  const int32_t bad[] = {1, 0};
  cns_clustering* c = nullptr;
  EXPECT_EQ(cns_clustering_create(bad, 2, &c), CNS_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(c, nullptr);
  EXPECT_STRNE(cns_last_error(), "");
  EXPECT_EQ(cns_clustering_create(nullptr, 2, &c), CNS_ERR_INVALID_ARGUMENT);
}

TEST(CApiTest, AriAndEquality) {
  cns_clustering* a = make({1, 1, 2, 2});
  cns_clustering* b = make({2, 2, 1, 1});
  cns_clustering* c = make({1, 2, 3, 3});
  double ari = 0;
  ASSERT_EQ(cns_adjusted_rand_index(a, b, &ari), CNS_OK);
  EXPECT_DOUBLE_EQ(ari, 1.0);
  ASSERT_EQ(cns_adjusted_rand_index(a, c, &ari), CNS_OK);
  EXPECT_NEAR(ari, 0.5714, 1e-4);
  int equal = 0;
  ASSERT_EQ(cns_clustering_equal(a, b, &equal), CNS_OK);
  EXPECT_EQ(equal, 1);
  cns_clustering* d = make({1, 2});
  EXPECT_EQ(cns_adjusted_rand_index(a, d, &ari), CNS_ERR_SIZE_MISMATCH);
  for (auto* x : {a, b, c, d}) cns_clustering_free(x);
}

TEST(CApiTest, EnsembleQualityAndConsensus) {
  cns_ensemble* e = nullptr;
  ASSERT_EQ(cns_ensemble_create(&e), CNS_OK);
  cns_clustering* c = make({1, 1, 1, 2, 2, 2, 3, 3, 3});
  for (int i = 0; i < 4; ++i) ASSERT_EQ(cns_ensemble_add(e, c), CNS_OK);
  cns_clustering* wrong = make({1, 2});
  EXPECT_EQ(cns_ensemble_add(e, wrong), CNS_ERR_SIZE_MISMATCH);
  EXPECT_EQ(cns_ensemble_size(e), 4u);
  double q[4];
  ASSERT_EQ(cns_ensemble_quality(e, q, 4), CNS_OK);
  for (double v : q) EXPECT_DOUBLE_EQ(v, 1.0);

  cns_consensus_options options;
  cns_consensus_options_init(&options);
  EXPECT_EQ(options.sweep_divisor, 10);
  EXPECT_DOUBLE_EQ(options.crossover_rate, 0.9);
  EXPECT_DOUBLE_EQ(options.mutation_rate, 0.01);
  cns_consensus* result = nullptr;
  ASSERT_EQ(cns_consensus_run(e, &options, &result), CNS_OK) << cns_last_error();
  EXPECT_EQ(cns_consensus_estimated_k(result), 3u);
  cns_clustering* labels = nullptr;
  ASSERT_EQ(cns_consensus_labels(result, &labels), CNS_OK);
  int equal = 0;
  cns_clustering_equal(labels, c, &equal);
  EXPECT_EQ(equal, 1);
  double mean = 0, sd = 1, base_mean = 0;
  ASSERT_EQ(cns_consensus_scores(result, &mean, &sd, &base_mean, nullptr), CNS_OK);
  EXPECT_DOUBLE_EQ(mean, 1.0);
  EXPECT_EQ(sd, 0.0);
  EXPECT_DOUBLE_EQ(base_mean, 1.0);

  const auto dir = temp_dir("consensus_capi_outputs");
  EXPECT_EQ(cns_consensus_write_front_csv(result, (dir / "front.csv").c_str()), CNS_OK);
  EXPECT_EQ(cns_consensus_write_sweep_csv(result, (dir / "sweep.csv").c_str()), CNS_OK);
  EXPECT_EQ(cns_consensus_write_trace_csv(result, (dir / "trace.csv").c_str()), CNS_OK);
  EXPECT_EQ(cns_consensus_write_report(result, (dir / "r.json").c_str(), CNS_REPORT_JSON), CNS_OK);
  EXPECT_TRUE(std::filesystem::exists(dir / "r.json"));
  EXPECT_EQ(cns_consensus_write_report(result, (dir / "r.txt").c_str(),
                                       static_cast<cns_report_format>(7)),
            CNS_ERR_INVALID_ARGUMENT);
  std::filesystem::remove_all(dir);

  cns_clustering_free(labels);
  cns_consensus_free(result);
  cns_clustering_free(wrong);
  cns_clustering_free(c);
  cns_ensemble_free(e);
}

TEST(CApiTest, SingleMemberConsensusFails) {
  cns_ensemble* e = nullptr;
  cns_ensemble_create(&e);
  cns_clustering* c = make({1, 2, 2});
  cns_ensemble_add(e, c);
  cns_consensus_options options;
  cns_consensus_options_init(&options);
  cns_consensus* result = nullptr;
  EXPECT_NE(cns_consensus_run(e, &options, &result), CNS_OK);
  EXPECT_EQ(result, nullptr);
  cns_clustering_free(c);
  cns_ensemble_free(e);
}

TEST(CApiTest, OddPopulationRejected) {
  cns_ensemble* e = nullptr;
  cns_ensemble_create(&e);
  cns_clustering* c = make({1, 2, 2});
  cns_ensemble_add(e, c);
  cns_ensemble_add(e, c);
  cns_consensus_options options;
  cns_consensus_options_init(&options);
  options.population_size = 5;
  cns_consensus* result = nullptr;
  EXPECT_EQ(cns_consensus_run(e, &options, &result), CNS_ERR_INVALID_ARGUMENT);
  cns_clustering_free(c);
  cns_ensemble_free(e);
}

TEST(CApiTest, GenerateFitAssign) {
  // Two tight groups of points in 2-d.
  std::vector<double> values;
  for (int i = 0; i < 40; ++i) {
    const double base = i < 20 ? 0.0 : 10.0;
    values.push_back(base + 0.01 * i);
    values.push_back(base - 0.02 * i);
  }
  cns_dataset* data = nullptr;
  ASSERT_EQ(cns_dataset_create(values.data(), 40, 2, &data), CNS_OK);
  EXPECT_EQ(cns_dataset_rows(data), 40u);
  EXPECT_EQ(cns_dataset_cols(data), 2u);

  cns_generate_options gen_options;
  cns_generate_options_init(&gen_options);
  const size_t schedule[] = {2, 2, 3};
  gen_options.k_schedule = schedule;
  gen_options.k_schedule_length = 3;
  gen_options.seed = 3;
  cns_generation* gen = nullptr;
  ASSERT_EQ(cns_generate(data, &gen_options, &gen), CNS_OK) << cns_last_error();
  EXPECT_EQ(cns_generation_member_count(gen), 3u);
  int32_t k = 0;
  double quality = 0;
  ASSERT_EQ(cns_generation_member_info(gen, 0, &k, &quality), CNS_OK);
  EXPECT_EQ(k, 2);
  EXPECT_FALSE(std::isnan(quality));

  const auto dir = temp_dir("consensus_capi_generate");
  ASSERT_EQ(cns_generation_write(gen, dir.c_str()), CNS_OK);
  cns_manifest* manifest = nullptr;
  ASSERT_EQ(cns_manifest_read((dir / "manifest.json").c_str(), &manifest), CNS_OK);
  EXPECT_STREQ(cns_manifest_normalization(manifest), "minmax");
  cns_ensemble* e = nullptr;
  ASSERT_EQ(cns_manifest_ensemble(manifest, &e), CNS_OK);
  EXPECT_EQ(cns_ensemble_size(e), 3u);
  cns_dataset* sample = nullptr;
  ASSERT_EQ(cns_manifest_dataset(manifest, &sample), CNS_OK);
  EXPECT_EQ(cns_dataset_rows(sample), 40u);

  cns_clustering* first = nullptr;
  ASSERT_EQ(cns_ensemble_member(e, 0, &first), CNS_OK);
  cns_model* model = nullptr;
  ASSERT_EQ(cns_model_fit(sample, first, "minmax", &model), CNS_OK);
  EXPECT_EQ(cns_model_k(model), 2u);
  EXPECT_EQ(cns_model_d(model), 2u);
  ASSERT_EQ(cns_model_save(model, (dir / "model.json").c_str()), CNS_OK);
  cns_model* loaded = nullptr;
  ASSERT_EQ(cns_model_load((dir / "model.json").c_str(), &loaded), CNS_OK);

  int32_t labels[40];
  ASSERT_EQ(cns_clustering_labels(first, labels, 40), CNS_OK);
  double row[2];
  for (size_t i = 0; i < 40; ++i) {
    ASSERT_EQ(cns_dataset_row(sample, i, row, 2), CNS_OK);
    int32_t got = 0;
    ASSERT_EQ(cns_model_assign(loaded, row, 2, &got), CNS_OK);
    EXPECT_EQ(got, labels[i]);
    ASSERT_EQ(cns_model_assign_knn(loaded, row, 2, 1, &got), CNS_OK);
    EXPECT_EQ(got, labels[i]);
  }
  int32_t got = 0;
  EXPECT_EQ(cns_model_assign(loaded, row, 1, &got), CNS_ERR_DIMENSION_MISMATCH);
  EXPECT_NE(std::string(cns_last_error()).find("expected 2"), std::string::npos);

  {
    std::ofstream empty(dir / "empty.csv");
  }
  ASSERT_EQ(cns_model_assign_csv(loaded, (dir / "empty.csv").c_str(), CNS_ASSIGN_CENTROID, 1,
                                 (dir / "empty_out.csv").c_str()),
            CNS_OK);
  EXPECT_EQ(std::filesystem::file_size(dir / "empty_out.csv"), 0u);
  EXPECT_EQ(cns_model_assign_csv(loaded, (dir / "missing.csv").c_str(), CNS_ASSIGN_CENTROID, 1,
                                 nullptr),
            CNS_ERR_IO);

  cns_model_free(loaded);
  cns_model_free(model);
  cns_clustering_free(first);
  cns_dataset_free(sample);
  cns_ensemble_free(e);
  cns_manifest_free(manifest);
  cns_generation_free(gen);
  cns_dataset_free(data);
  std::filesystem::remove_all(dir);
}

TEST(CApiTest, MissingFilesAreIoErrors) {
  cns_dataset* data = nullptr;
  EXPECT_EQ(cns_dataset_read_csv("/nonexistent/x.csv", &data), CNS_ERR_IO);
  EXPECT_NE(std::string(cns_last_error()).find("/nonexistent/x.csv"), std::string::npos);
  cns_manifest* m = nullptr;
  EXPECT_EQ(cns_manifest_read("/nonexistent/manifest.json", &m), CNS_ERR_IO);
  cns_model* model = nullptr;
  EXPECT_EQ(cns_model_load("/nonexistent/model.json", &model), CNS_ERR_IO);
}

TEST(CApiTest, FreeAcceptsNull) {
  cns_dataset_free(nullptr);
  cns_clustering_free(nullptr);
  cns_ensemble_free(nullptr);
  cns_manifest_free(nullptr);
  cns_generation_free(nullptr);
  cns_consensus_free(nullptr);
  cns_model_free(nullptr);
}

}  // namespace
