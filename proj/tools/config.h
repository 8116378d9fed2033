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

// Flat "key = value" configuration files for the command-line tool.
//
//   # comment
//   dataset = flights.csv
//   k_schedule = 5, 5, 5, 3, 4, 6, 7
//
// Keys are unique; list values are comma separated and may be wrapped in
// brackets. Relative paths resolve against the config file's directory.

#ifndef CONSENSUS_TOOLS_CONFIG_H_
#define CONSENSUS_TOOLS_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace consensus::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Config {
 public:
  Config() = default;

  // Throws ConfigError on syntax errors, duplicate or unknown keys.
  static Config parse(std::istream& in, const std::string& source = "<config>");
  static Config load(const std::filesystem::path& path);

  bool has(const std::string& key) const { return values_.count(key) != 0; }
  std::optional<std::string> text(const std::string& key) const;
  std::optional<std::filesystem::path> path(const std::string& key) const;
  std::optional<std::uint64_t> unsigned_value(const std::string& key) const;
  std::optional<int> int_value(const std::string& key) const;
  std::optional<double> double_value(const std::string& key) const;
  std::optional<bool> bool_value(const std::string& key) const;
  std::optional<std::vector<std::size_t>> size_list(const std::string& key) const;

  const std::filesystem::path& base_dir() const noexcept { return base_dir_; }

  static const std::vector<std::string>& known_keys();

 private:
  std::map<std::string, std::string> values_;
  std::filesystem::path base_dir_;
  std::string source_;

  [[noreturn]] void bad_value(const std::string& key, const std::string& expected) const;
};

}  // namespace consensus::cli

#endif  // CONSENSUS_TOOLS_CONFIG_H_
