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

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace consensus {
namespace {

using nlohmann::json;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cell += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cell += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back(trim(cell));
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.emplace_back(trim(cell));
  return cells;
}

bool parse_double(std::string_view text, double& out) {
  text = trim(text);
  if (text.empty()) return false;
  if (text.front() == '+') text.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

bool parse_label(std::string_view text, Label& out) {
  text = trim(text);
  if (text.empty()) return false;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

bool blank(std::string_view line) { return trim(line).empty(); }

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "' for reading");
  return in;
}

}  // namespace

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open '" + path.string() + "' for writing");
  return out;
}

std::optional<DataMatrix> read_data_csv(std::istream& in) {
  std::string line;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    if (blank(line)) continue;
    header = split_csv_line(line);
    break;
  }
  if (header.empty()) return std::nullopt;
  const std::size_t d = header.size();

  std::vector<double> values;
  std::size_t rows = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto cells = split_csv_line(line);
    if (cells.size() != d) {
      throw Error(ErrorCode::kInvalidArgument,
                  "line " + std::to_string(line_no) + ": expected " + std::to_string(d) +
                      " cells, found " + std::to_string(cells.size()));
    }
    for (std::size_t j = 0; j < d; ++j) {
      double v = 0.0;
      if (!parse_double(cells[j], v) || !std::isfinite(v)) {
        throw Error(ErrorCode::kInvalidArgument,
                    "line " + std::to_string(line_no) + ", column '" + header[j] +
                        "': missing or non-numeric value '" + cells[j] + "'");
      }
      values.push_back(v);
    }
    ++rows;
  }
  if (rows == 0) {
    throw Error(ErrorCode::kInvalidArgument, "feature CSV has a header but no data rows");
  }
  Matrix m(rows, d);
  std::copy(values.begin(), values.end(), m.row(0).begin());
  return DataMatrix(std::move(m), std::move(header));
}

DataMatrix read_data_csv(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  auto data = read_data_csv(in);
  if (!data) throw Error(ErrorCode::kInvalidArgument, "'" + path.string() + "' is empty");
  return std::move(*data);
}

void write_data_csv(std::ostream& out, const DataMatrix& data) {
  for (std::size_t j = 0; j < data.d(); ++j) {
    out << (j ? "," : "") << data.feature_names()[j];
  }
  out << '\n';
  for (std::size_t i = 0; i < data.n(); ++i) {
    const auto row = data.row(i);
    for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << format_double(row[j]);
    out << '\n';
  }
}

void write_data_csv(const std::filesystem::path& path, const DataMatrix& data) {
  auto out = open_for_write(path);
  write_data_csv(out, data);
}

Clustering read_labels_csv(std::istream& in) {
  std::vector<Label> labels;
  std::string line;
  bool first = true;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto cells = split_csv_line(line);
    if (first && cells.size() == 1 && cells[0] == "label") {
      first = false;
      continue;
    }
    first = false;
    Label v = 0;
    if (cells.size() != 1 || !parse_label(cells[0], v)) {
      throw Error(ErrorCode::kInvalidArgument,
                  "line " + std::to_string(line_no) + ": expected one integer label");
    }
    labels.push_back(v);
  }
  return Clustering(labels);
}

Clustering read_labels_csv(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  try {
    return read_labels_csv(in);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.what());
  }
}

void write_labels_csv(std::ostream& out, const Clustering& c) {
  out << "label\n";
  for (Label l : c.labels()) out << l << '\n';
}

void write_labels_csv(const std::filesystem::path& path, const Clustering& c) {
  auto out = open_for_write(path);
  write_labels_csv(out, c);
}

void write_manifest(const std::filesystem::path& path, const Manifest& manifest) {
  json doc;
  doc["format"] = "consensus-ensemble-manifest";
  doc["version"] = Manifest::kVersion;
  doc["dataset"] = manifest.dataset;
  doc["normalization"] = manifest.normalization;
  doc["subspace_fraction"] = manifest.subspace_fraction;
  doc["seed"] = manifest.seed;
  doc["members"] = json::array();
  for (const auto& member : manifest.members) {
    doc["members"].push_back({{"file", member.file},
                              {"k", member.k},
                              {"scheduled_k", member.scheduled_k},
                              {"features", member.features},
                              {"seed", member.seed}});
  }
  auto out = open_for_write(path);
  out << doc.dump(2) << '\n';
}

Manifest read_manifest(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  Manifest manifest;
  try {
    const json doc = json::parse(in);
    if (doc.value("version", 0) != Manifest::kVersion) {
      throw Error(ErrorCode::kInvalidArgument, "unsupported manifest version");
    }
    manifest.dataset = doc.value("dataset", std::string());
    manifest.normalization = doc.value("normalization", std::string());
    manifest.subspace_fraction = doc.value("subspace_fraction", 0.0);
    manifest.seed = doc.value("seed", std::uint64_t{0});
    for (const auto& entry : doc.at("members")) {
      ManifestMember member;
      member.file = entry.at("file").get<std::string>();
      member.k = entry.value("k", std::size_t{0});
      member.scheduled_k = entry.value("scheduled_k", std::size_t{0});
      member.features = entry.value("features", std::vector<std::size_t>{});
      member.seed = entry.value("seed", std::uint64_t{0});
      manifest.members.push_back(std::move(member));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument,
                "malformed manifest '" + path.string() + "': " + e.what());
  }
  return manifest;
}

ClusteringEnsemble load_manifest_ensemble(const std::filesystem::path& manifest_path,
                                          const Manifest& manifest) {
  const auto dir = manifest_path.parent_path();
  std::vector<Clustering> members;
  members.reserve(manifest.members.size());
  for (const auto& member : manifest.members) members.push_back(read_labels_csv(dir / member.file));
  return ClusteringEnsemble(std::move(members));
}

}  // namespace consensus
