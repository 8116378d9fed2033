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

#include "consensus/io.h"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "gtest/gtest.h"

namespace consensus {
namespace {

TEST(FormatDoubleTest, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.5), "0.5");
  EXPECT_EQ(format_double(15.0), "15");
  for (double v : {0.1, 1.0 / 3.0, 4.375, -2.5e-8, 123456.789}) {
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(DataCsvTest, ReadWriteRoundTrip) {
  std::istringstream in("x,y\n1,2.5\n-3,4e2\n");
  const auto data = read_data_csv(in);
  ASSERT_TRUE(data.has_value());
  EXPECT_EQ(data->n(), 2u);
  EXPECT_EQ(data->feature_names(), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(data->row(1)[1], 400.0);
  std::ostringstream out;
  write_data_csv(out, *data);
  EXPECT_EQ(out.str(), "x,y\n1,2.5\n-3,400\n");
}

TEST(DataCsvTest, EmptyStreamIsNullopt) {
  std::istringstream in("");
  EXPECT_FALSE(read_data_csv(in).has_value());
}

TEST(DataCsvTest, RejectsMalformedRows) {
  std::istringstream missing("x,y\n1,\n");
  EXPECT_THROW(read_data_csv(missing), Error);
  std::istringstream text("x,y\n1,abc\n");
  EXPECT_THROW(read_data_csv(text), Error);
  std::istringstream ragged("x,y\n1,2,3\n");
  EXPECT_THROW(read_data_csv(ragged), Error);
  std::istringstream header_only("x,y\n");
  EXPECT_THROW(read_data_csv(header_only), Error);
}

TEST(DataCsvTest, MissingFileNamesPath) {
  try {
    read_data_csv(std::filesystem::path("/nonexistent/data.csv"));
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
    EXPECT_NE(std::string(e.what()).find("/nonexistent/data.csv"), std::string::npos);
  }
}

TEST(LabelsCsvTest, RoundTripWithAndWithoutHeader) {
  std::istringstream with("label\n3\n3\n7\n");
  EXPECT_EQ(read_labels_csv(with), Clustering({1, 1, 2}));
  std::istringstream without("2\n1\n");
  EXPECT_EQ(read_labels_csv(without), Clustering({1, 2}));
  std::ostringstream out;
  write_labels_csv(out, Clustering({4, 4, 9}));
  EXPECT_EQ(out.str(), "label\n1\n1\n2\n");
  std::istringstream bad("label\nx\n");
  EXPECT_THROW(read_labels_csv(bad), Error);
}

TEST(ManifestTest, RoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "consensus_manifest_test";
  std::filesystem::create_directories(dir);
  Manifest m;
  m.dataset = "sample.csv";
  m.normalization = "minmax";
  m.subspace_fraction = 0.7;
  m.seed = 42;
  m.members.push_back({"member_01.csv", 2, 2, {0, 1}, 99});
  m.members.push_back({"member_02.csv", 3, 3, {1}, 100});
  write_labels_csv(dir / "member_01.csv", Clustering({1, 1, 2}));
  write_labels_csv(dir / "member_02.csv", Clustering({1, 2, 3}));
  write_manifest(dir / "manifest.json", m);
  const auto back = read_manifest(dir / "manifest.json");
  EXPECT_EQ(back.dataset, "sample.csv");
  EXPECT_EQ(back.seed, 42u);
  ASSERT_EQ(back.members.size(), 2u);
  EXPECT_EQ(back.members[1].features, (std::vector<std::size_t>{1}));
  const auto e = load_manifest_ensemble(dir / "manifest.json", back);
  EXPECT_EQ(e.size(), 2u);
  EXPECT_EQ(e[1], Clustering({1, 2, 3}));
  std::filesystem::remove_all(dir);
}

TEST(ManifestTest, RejectsForeignJson) {
  const auto path = std::filesystem::temp_directory_path() / "consensus_foreign.json";
  {
    std::ofstream out(path);
    out << "{\"format\": \"other\", \"version\": 1}";
  }
  EXPECT_THROW(read_manifest(path), Error);
  std::filesystem::remove(path);
}

}  // namespace
}  // namespace consensus
