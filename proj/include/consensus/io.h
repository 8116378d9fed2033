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

#ifndef CONSENSUS_IO_H_
#define CONSENSUS_IO_H_

#include <filesystem>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "consensus/core.h"

namespace consensus {

// Shortest decimal text that reads back to the same double.
std::string format_double(double v);

// Feature CSV: header row of feature names, then one numeric row per object.
// Empty cells or non-numeric text are rejected. Returns nullopt when the
// stream holds no rows at all (not even a header).
std::optional<DataMatrix> read_data_csv(std::istream& in);
DataMatrix read_data_csv(const std::filesystem::path& path);
void write_data_csv(std::ostream& out, const DataMatrix& data);
void write_data_csv(const std::filesystem::path& path, const DataMatrix& data);

// Single-column integer labels, optional "label" header.
Clustering read_labels_csv(std::istream& in);
Clustering read_labels_csv(const std::filesystem::path& path);
void write_labels_csv(std::ostream& out, const Clustering& c);
void write_labels_csv(const std::filesystem::path& path, const Clustering& c);

// One entry per ensemble member in a manifest.
struct ManifestMember {
  std::string file;  // relative to the manifest's directory
  std::size_t k = 0;
  std::size_t scheduled_k = 0;
  std::vector<std::size_t> features;  // column indices used by the run
  std::uint64_t seed = 0;
};

struct Manifest {
  static constexpr int kVersion = 1;

  std::string dataset;  // sampled data CSV, relative to the manifest; may be empty
  std::string normalization;
  double subspace_fraction = 0.0;
  std::uint64_t seed = 0;
  std::vector<ManifestMember> members;
};

void write_manifest(const std::filesystem::path& path, const Manifest& manifest);
Manifest read_manifest(const std::filesystem::path& path);

// Loads every member listed in the manifest.
ClusteringEnsemble load_manifest_ensemble(const std::filesystem::path& manifest_path,
                                          const Manifest& manifest);

std::ofstream open_for_write(const std::filesystem::path& path);

}  // namespace consensus

#endif  // CONSENSUS_IO_H_
