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

#include <cstdio>
#include <numeric>
#include <string>

#include "consensus/metrics.h"
#include "json.hpp"

namespace consensus {
namespace {

std::string member_file_name(std::size_t index, std::size_t count) {
  const int width = count >= 100 ? 3 : 2;
  char buf[32];
  std::snprintf(buf, sizeof(buf), "member_%0*zu.csv", width, index + 1);
  return buf;
}

}  // namespace

GenerationResult run_generation(const DataMatrix& data, const GenerationOptions& options) {
  const Rng root(options.protocol.seed);
  DataMatrix encoded =
      options.one_hot_columns.empty() ? data : one_hot_encode(data, options.one_hot_columns);

  std::vector<std::size_t> rows;
  DataMatrix sample = encoded;
  if (options.plan.sample_size != 0) {
    Rng sampling = root.split(0);
    StratifiedSample s = stratified_sample(encoded, options.plan, sampling);
    sample = std::move(s.data);
    rows = std::move(s.rows);
  } else {
    rows.resize(encoded.n());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
  }

  EnsembleProtocol protocol = options.protocol;
  protocol.seed = root.split(1).seed();
  GeneratedEnsemble ensemble = generate_ensemble(sample, protocol);
  std::vector<double> quality;
  if (ensemble.ensemble.size() >= 2) quality = quality_weights(ensemble.ensemble);
  return {std::move(sample), std::move(rows), std::move(ensemble), std::move(quality)};
}

std::filesystem::path write_generation(const std::filesystem::path& dir,
                                       const GenerationResult& result,
                                       const GenerationOptions& options) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create '" + dir.string() + "': " + ec.message());

  Manifest manifest;
  manifest.dataset = "sample.csv";
  manifest.normalization = std::string(to_string(options.protocol.normalization));
  manifest.subspace_fraction = options.protocol.subspace_fraction;
  manifest.seed = options.protocol.seed.value;
  write_data_csv(dir / manifest.dataset, result.sample);
  const auto& members = result.ensemble.members;
  for (std::size_t i = 0; i < members.size(); ++i) {
    ManifestMember entry;
    entry.file = member_file_name(i, members.size());
    entry.k = static_cast<std::size_t>(members[i].labels.k());
    entry.scheduled_k = members[i].scheduled_k;
    entry.features = members[i].features;
    entry.seed = members[i].seed;
    write_labels_csv(dir / entry.file, members[i].labels);
    manifest.members.push_back(std::move(entry));
  }
  const auto path = dir / "manifest.json";
  write_manifest(path, manifest);
  return path;
}

ConsensusResult run_consensus(const ClusteringEnsemble& input, const ConsensusOptions& options) {
  if (input.size() < 2) {
    throw Error(ErrorCode::kInvalidArgument,
                "consensus needs at least 2 base members, got " + std::to_string(input.size()));
  }
  options.ga.validate();
  const ClusteringEnsemble base = input.with_similarity();

  ConsensusResult r;
  r.member_quality = quality_weights(base);
  const WeightedCoassocMatrix coassoc = build_weighted_coassoc(base, CoassocMode::kWeighted);
  r.scale_factor = coassoc.scale;
  r.sweep = threshold_sweep(coassoc, options.sweep_divisor, options.sweep_steps);
  r.estimated_k = estimate_cluster_count(base, r.sweep);
  r.refined = build_refined_ensemble(base, r.estimated_k, options.dedupe_refined);
  r.evolution = evolve(base, r.refined.members, options.ga);
  r.consensus = select_final(r.evolution.front, base);
  r.consensus_vs_base = objectives(r.consensus, base);
  r.baseline = eac_baseline(base, r.estimated_k);
  r.baseline_vs_base = objectives(r.baseline, base);
  return r;
}

void write_report_text(std::ostream& out, const ConsensusResult& r) {
  out << "base members:        " << r.member_quality.size() << '\n';
  out << "objects:             " << r.consensus.n() << '\n';
  out << "scale factor w:      " << format_double(r.scale_factor) << '\n';
  out << "estimated k:         " << r.estimated_k << '\n';
  out << "refined ensemble:    " << r.refined.members.size() << " members ("
      << r.refined.transformed.size() << " transformed, reference member "
      << r.refined.reference + 1 << ")\n";
  out << "population size:     " << r.evolution.population_size << '\n';
  out << "generations run:     " << r.evolution.generations_run << '\n';
  out << "pareto front size:   " << r.evolution.front.solutions.size() << '\n';
  out << '\n';
  out << "method      k   mean_ari  std_ari\n";
  char line[128];
  std::snprintf(line, sizeof(line), "%-10s %2d  %8.4f  %7.4f\n", "proposed", r.consensus.k(),
                r.consensus_vs_base.mean_ari, r.consensus_vs_base.std_ari);
  out << line;
  std::snprintf(line, sizeof(line), "%-10s %2d  %8.4f  %7.4f\n", "eac-al", r.baseline.k(),
                r.baseline_vs_base.mean_ari, r.baseline_vs_base.std_ari);
  out << line;
  out << '\n';
  out << "member  k   quality\n";
  for (std::size_t p = 0; p < r.member_quality.size(); ++p) {
    std::snprintf(line, sizeof(line), "%6zu %2d  %8.4f\n", p + 1,
                  r.refined.members[p].k(), r.member_quality[p]);
    out << line;
  }
}

void write_report_json(std::ostream& out, const ConsensusResult& r) {
  using nlohmann::json;
  json doc;
  doc["base_members"] = r.member_quality.size();
  doc["objects"] = r.consensus.n();
  doc["scale_factor"] = r.scale_factor;
  doc["estimated_k"] = r.estimated_k;
  doc["refined"] = {{"size", r.refined.members.size()},
                    {"reference_member", r.refined.reference + 1},
                    {"transformed", r.refined.transformed.size()}};
  doc["population_size"] = r.evolution.population_size;
  doc["generations_run"] = r.evolution.generations_run;
  doc["pareto_front_size"] = r.evolution.front.solutions.size();
  doc["proposed"] = {{"k", r.consensus.k()},
                     {"mean_ari", r.consensus_vs_base.mean_ari},
                     {"std_ari", r.consensus_vs_base.std_ari}};
  doc["baselines"] = json::array({{{"method", "eac-al"},
                                   {"k", r.baseline.k()},
                                   {"mean_ari", r.baseline_vs_base.mean_ari},
                                   {"std_ari", r.baseline_vs_base.std_ari}}});
  json members = json::array();
  for (std::size_t p = 0; p < r.member_quality.size(); ++p) {
    members.push_back({{"k", r.refined.members[p].k()}, {"quality", r.member_quality[p]}});
  }
  doc["members"] = std::move(members);
  out << doc.dump(2) << '\n';
}

}  // namespace consensus
