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

// consensus-cli: generate a base ensemble, build a consensus clustering from
// it, and label new data with the resulting model. Uses only the C API.
//
// Exit codes: 0 success, 1 algorithmic failure, 2 usage or I/O error.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "config.h"
#include "consensus/consensus.h"

namespace {

namespace fs = std::filesystem;
using consensus::cli::Config;
using consensus::cli::ConfigError;

constexpr int kExitAlgorithm = 1;
constexpr int kExitUsage = 2;

// Failure of a C API call, carrying its status.
struct ApiFailure {
  cns_status status;
  std::string message;
};

void check(cns_status status) {
  if (status != CNS_OK) throw ApiFailure{status, cns_last_error()};
}

template <typename T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
template <typename T, void (*Free)(T*)>
using Handle = std::unique_ptr<T, Deleter<T, Free>>;

using Dataset = Handle<cns_dataset, cns_dataset_free>;
using ClusteringHandle = Handle<cns_clustering, cns_clustering_free>;
using Ensemble = Handle<cns_ensemble, cns_ensemble_free>;
using ManifestHandle = Handle<cns_manifest, cns_manifest_free>;
using Generation = Handle<cns_generation, cns_generation_free>;
using ConsensusHandle = Handle<cns_consensus, cns_consensus_free>;
using Model = Handle<cns_model, cns_model_free>;

int exit_code_for(cns_status status) {
  return status == CNS_ERR_ALGORITHM || status == CNS_ERR_INTERNAL ? kExitAlgorithm : kExitUsage;
}

struct GenerateArgs {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string output_dir;
};

struct ConsensusArgs {
  std::string manifest;
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string output_dir;
  std::optional<std::size_t> generations;
  std::optional<std::size_t> population;
  bool emit_sweep = false;
  bool emit_trace = false;
  std::string report_format;
};

struct AssignArgs {
  std::string model;
  std::string data;
  std::string method = "centroid";
  std::size_t k_nn = 5;
  std::string output;
};

int run_generate(const GenerateArgs& args) {
  const Config config = Config::load(args.config);
  const auto dataset = config.path("dataset");
  if (!dataset) throw ConfigError(args.config + ": missing required key 'dataset'");
  const auto schedule = config.size_list("k_schedule");
  if (!schedule || schedule->empty()) {
    throw ConfigError(args.config + ": missing required key 'k_schedule'");
  }

  cns_generate_options options;
  cns_generate_options_init(&options);
  options.sample_size = config.unsigned_value("sample_size").value_or(options.sample_size);
  options.bins_per_feature =
      config.unsigned_value("bins_per_feature").value_or(options.bins_per_feature);
  options.min_stratum_size =
      config.unsigned_value("min_stratum_size").value_or(options.min_stratum_size);
  options.subspace_fraction =
      config.double_value("subspace_fraction").value_or(options.subspace_fraction);
  const auto strata = config.size_list("strata_features");
  if (strata) {
    options.strata_features = strata->data();
    options.strata_feature_count = strata->size();
  }
  const auto one_hot = config.size_list("one_hot_columns");
  if (one_hot) {
    options.one_hot_columns = one_hot->data();
    options.one_hot_count = one_hot->size();
  }
  options.k_schedule = schedule->data();
  options.k_schedule_length = schedule->size();
  const auto normalization = config.text("normalization");
  if (normalization) options.normalization = normalization->c_str();
  options.seed = args.seed.value_or(config.unsigned_value("seed").value_or(0));

  fs::path out_dir = config.path("output_dir").value_or(config.base_dir());
  if (!args.output_dir.empty()) out_dir = args.output_dir;
  if (out_dir.empty()) out_dir = ".";

  cns_dataset* raw_data = nullptr;
  check(cns_dataset_read_csv(dataset->string().c_str(), &raw_data));
  Dataset data(raw_data);
  cns_generation* raw_gen = nullptr;
  check(cns_generate(data.get(), &options, &raw_gen));
  Generation gen(raw_gen);
  check(cns_generation_write(gen.get(), out_dir.string().c_str()));

  std::printf("member   k   quality\n");
  for (std::size_t i = 0; i < cns_generation_member_count(gen.get()); ++i) {
    int32_t k = 0;
    double quality = 0.0;
    check(cns_generation_member_info(gen.get(), i, &k, &quality));
    if (std::isnan(quality)) {
      std::printf("%6zu  %2d         -\n", i + 1, k);
    } else {
      std::printf("%6zu  %2d  %8.4f\n", i + 1, k, quality);
    }
  }
  std::printf("manifest: %s\n", (out_dir / "manifest.json").string().c_str());
  return 0;
}

cns_matching parse_matching(const std::string& name) {
  if (name == "greedy") return CNS_MATCHING_GREEDY;
  if (name == "optimal") return CNS_MATCHING_OPTIMAL;
  throw ConfigError("matching must be greedy or optimal, got '" + name + "'");
}

cns_objective_source parse_objective_source(const std::string& name) {
  if (name == "base") return CNS_OBJECTIVES_BASE;
  if (name == "refined") return CNS_OBJECTIVES_REFINED;
  if (name == "union") return CNS_OBJECTIVES_UNION;
  throw ConfigError("objective_source must be base, refined or union, got '" + name + "'");
}

int run_consensus(const ConsensusArgs& args) {
  const Config config = args.config.empty() ? Config() : Config::load(args.config);

  cns_consensus_options options;
  cns_consensus_options_init(&options);
  options.sweep_divisor = config.int_value("sweep_divisor").value_or(options.sweep_divisor);
  options.sweep_steps = config.int_value("sweep_steps").value_or(options.sweep_steps);
  options.dedupe_refined =
      config.bool_value("dedupe_refined").value_or(options.dedupe_refined != 0) ? 1 : 0;
  options.crossover_rate = config.double_value("crossover_rate").value_or(options.crossover_rate);
  options.mutation_rate = config.double_value("mutation_rate").value_or(options.mutation_rate);
  options.mutation_step = config.double_value("mutation_step").value_or(options.mutation_step);
  options.stall_generations =
      config.unsigned_value("stall_generations").value_or(options.stall_generations);
  options.generations = args.generations.value_or(
      config.unsigned_value("generations").value_or(options.generations));
  options.population_size = args.population.value_or(
      config.unsigned_value("population").value_or(options.population_size));
  if (const auto m = config.text("matching")) options.matching = parse_matching(*m);
  if (const auto s = config.text("objective_source")) {
    options.objective_source = parse_objective_source(*s);
  }
  options.seed = args.seed.value_or(config.unsigned_value("seed").value_or(0));

  std::string format = args.report_format;
  if (format.empty()) format = config.text("report_format").value_or("text");
  if (format != "text" && format != "json") {
    throw ConfigError("report format must be text or json, got '" + format + "'");
  }
  const bool emit_sweep = args.emit_sweep || config.bool_value("emit_sweep").value_or(false);
  const bool emit_trace = args.emit_trace || config.bool_value("emit_trace").value_or(false);

  cns_manifest* raw_manifest = nullptr;
  check(cns_manifest_read(args.manifest.c_str(), &raw_manifest));
  ManifestHandle manifest(raw_manifest);
  cns_ensemble* raw_ensemble = nullptr;
  check(cns_manifest_ensemble(manifest.get(), &raw_ensemble));
  Ensemble ensemble(raw_ensemble);

  fs::path out_dir = fs::path(args.manifest).parent_path();
  if (const auto p = config.path("output_dir")) out_dir = *p;
  if (!args.output_dir.empty()) out_dir = args.output_dir;
  if (out_dir.empty()) out_dir = ".";
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) {
    throw ApiFailure{CNS_ERR_IO, "cannot create '" + out_dir.string() + "': " + ec.message()};
  }

  cns_consensus* raw_result = nullptr;
  check(cns_consensus_run(ensemble.get(), &options, &raw_result));
  ConsensusHandle result(raw_result);

  cns_clustering* raw_labels = nullptr;
  check(cns_consensus_labels(result.get(), &raw_labels));
  ClusteringHandle labels(raw_labels);
  check(cns_clustering_write_csv(labels.get(), (out_dir / "consensus_labels.csv").c_str()));
  check(cns_consensus_write_front_csv(result.get(), (out_dir / "pareto_front.csv").c_str()));
  const cns_report_format report_format = format == "json" ? CNS_REPORT_JSON : CNS_REPORT_TEXT;
  const fs::path report = out_dir / (format == "json" ? "report.json" : "report.txt");
  check(cns_consensus_write_report(result.get(), report.c_str(), report_format));
  if (emit_sweep) {
    check(cns_consensus_write_sweep_csv(result.get(), (out_dir / "sweep.csv").c_str()));
  }
  if (emit_trace) {
    check(cns_consensus_write_trace_csv(result.get(), (out_dir / "trace.csv").c_str()));
  }

  // The mapping model needs the sampled feature rows, which only manifests
  // written by `generate` reference.
  cns_dataset* raw_data = nullptr;
  if (cns_manifest_dataset(manifest.get(), &raw_data) == CNS_OK) {
    Dataset data(raw_data);
    cns_model* raw_model = nullptr;
    check(cns_model_fit(data.get(), labels.get(), cns_manifest_normalization(manifest.get()),
                        &raw_model));
    Model model(raw_model);
    check(cns_model_save(model.get(), (out_dir / "model.json").c_str()));
  } else {
    std::fprintf(stderr, "note: no mapping model written: %s\n", cns_last_error());
  }

  check(cns_consensus_write_report(result.get(), nullptr, report_format));
  return 0;
}

int run_assign(const AssignArgs& args) {
  cns_assign_method method = CNS_ASSIGN_CENTROID;
  if (args.method == "knn") {
    method = CNS_ASSIGN_KNN;
  } else if (args.method != "centroid") {
    throw ConfigError("--method must be centroid or knn, got '" + args.method + "'");
  }
  cns_model* raw_model = nullptr;
  check(cns_model_load(args.model.c_str(), &raw_model));
  Model model(raw_model);
  check(cns_model_assign_csv(model.get(), args.data.c_str(), method, args.k_nn,
                             args.output.empty() ? nullptr : args.output.c_str()));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Consensus clustering from an ensemble of base clusterings"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Sample the data and build a base ensemble");
  generate->add_option("--config", gen.config, "Config file")->required();
  generate->add_option("--seed", gen.seed, "Random seed (overrides the config)");
  generate->add_option("--output-dir", gen.output_dir, "Directory for the ensemble files");

  ConsensusArgs con;
  auto* consensus = app.add_subcommand("consensus", "Build a consensus clustering");
  consensus->add_option("manifest", con.manifest, "Ensemble manifest")->required();
  consensus->add_option("--config", con.config, "Config file");
  consensus->add_option("--seed", con.seed, "Random seed (overrides the config)");
  consensus->add_option("--output-dir", con.output_dir,
                        "Output directory (default: the manifest's directory)");
  consensus->add_option("--generations", con.generations, "Maximum NSGA-II generations");
  consensus->add_option("--population", con.population, "Population size (even)");
  consensus->add_flag("--emit-sweep", con.emit_sweep, "Also write sweep.csv");
  consensus->add_flag("--emit-trace", con.emit_trace, "Also write trace.csv");
  consensus->add_option("--report-format", con.report_format, "text or json");

  AssignArgs asg;
  auto* assign = app.add_subcommand("assign", "Label new rows with a consensus model");
  assign->add_option("--model", asg.model, "Model file written by consensus")->required();
  assign->add_option("--data", asg.data, "Feature CSV to label")->required();
  assign->add_option("--method", asg.method, "centroid or knn");
  assign->add_option("--k-nn", asg.k_nn, "Neighbors for --method knn");
  assign->add_option("--output", asg.output, "Output CSV (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*generate) return run_generate(gen);
    if (*consensus) return run_consensus(con);
    return run_assign(asg);
  } catch (const ApiFailure& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return exit_code_for(e.status);
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
}
