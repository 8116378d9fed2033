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

#include "config.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace consensus::cli {
namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
bool parse_number(const std::string& text, T& out) {
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, out);
  return ec == std::errc() && ptr == end;
}

}  // namespace

const std::vector<std::string>& Config::known_keys() {
  static const std::vector<std::string> keys = {
      // generate
      "dataset", "output_dir", "sample_size", "bins_per_feature", "strata_features",
      "min_stratum_size", "k_schedule", "subspace_fraction", "normalization", "one_hot_columns",
      // shared
      "seed",
      // consensus
      "generations", "population", "crossover_rate", "mutation_rate", "stall_generations",
      "mutation_step", "sweep_divisor", "sweep_steps", "dedupe_refined", "matching",
      "objective_source", "report_format", "emit_sweep", "emit_trace"};
  return keys;
}

Config Config::parse(std::istream& in, const std::string& source) {
  Config config;
  config.source_ = source;
  const auto& known = known_keys();
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = source + ":" + std::to_string(line_no);
    if (eq == std::string::npos) throw ConfigError(where + ": expected 'key = value'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError(where + ": missing key");
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
    if (!config.values_.emplace(key, value).second) {
      throw ConfigError(where + ": duplicate key '" + key + "'");
    }
  }
  return config;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
  Config config = parse(in, path.string());
  config.base_dir_ = path.parent_path();
  return config;
}

void Config::bad_value(const std::string& key, const std::string& expected) const {
  throw ConfigError(source_ + ": '" + key + "' must be " + expected + ", got '" +
                    values_.at(key) + "'");
}

std::optional<std::string> Config::text(const std::string& key) const {
  const auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

std::optional<std::filesystem::path> Config::path(const std::string& key) const {
  const auto value = text(key);
  if (!value) return std::nullopt;
  std::filesystem::path p(*value);
  if (p.is_relative()) p = base_dir_ / p;
  return p;
}

std::optional<std::uint64_t> Config::unsigned_value(const std::string& key) const {
  const auto value = text(key);
  if (!value) return std::nullopt;
  std::uint64_t out = 0;
  if (!parse_number(*value, out)) bad_value(key, "a non-negative integer");
  return out;
}

std::optional<int> Config::int_value(const std::string& key) const {
  const auto value = text(key);
  if (!value) return std::nullopt;
  int out = 0;
  if (!parse_number(*value, out)) bad_value(key, "an integer");
  return out;
}

std::optional<double> Config::double_value(const std::string& key) const {
  const auto value = text(key);
  if (!value) return std::nullopt;
  double out = 0.0;
  if (!parse_number(*value, out)) bad_value(key, "a number");
  return out;
}

std::optional<bool> Config::bool_value(const std::string& key) const {
  const auto value = text(key);
  if (!value) return std::nullopt;
  if (*value == "true" || *value == "1" || *value == "yes") return true;
  if (*value == "false" || *value == "0" || *value == "no") return false;
  bad_value(key, "true or false");
}

std::optional<std::vector<std::size_t>> Config::size_list(const std::string& key) const {
  auto value = text(key);
  if (!value) return std::nullopt;
  std::string body = *value;
  if (!body.empty() && body.front() == '[') {
    if (body.back() != ']') bad_value(key, "a bracketed list");
    body = body.substr(1, body.size() - 2);
  }
  std::vector<std::size_t> out;
  if (trim(body).empty()) return out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t v = 0;
    if (!parse_number(trim(item), v)) bad_value(key, "a list of non-negative integers");
    out.push_back(v);
  }
  return out;
}

}  // namespace consensus::cli
