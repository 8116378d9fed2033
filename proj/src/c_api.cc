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

#include "consensus/consensus.h"

#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "consensus/core.h"
#include "consensus/io.h"
#include "consensus/mapping.h"
#include "consensus/metrics.h"
#include "consensus/pipeline.h"

struct cns_dataset {
  consensus::DataMatrix data;
};

struct cns_clustering {
  consensus::Clustering labels;
};

struct cns_ensemble {
  std::vector<consensus::Clustering> members;
};

struct cns_manifest {
  std::filesystem::path path;
  consensus::Manifest manifest;
};

struct cns_generation {
  consensus::GenerationOptions options;
  consensus::GenerationResult result;
};

struct cns_consensus {
  consensus::ConsensusResult result;
};

struct cns_model {
  consensus::CentroidModel model;
};

namespace {

thread_local std::string g_last_error;

cns_status to_status(consensus::ErrorCode code) {
  switch (code) {
    case consensus::ErrorCode::kInvalidArgument:
      return CNS_ERR_INVALID_ARGUMENT;
    case consensus::ErrorCode::kSizeMismatch:
      return CNS_ERR_SIZE_MISMATCH;
    case consensus::ErrorCode::kDimensionMismatch:
      return CNS_ERR_DIMENSION_MISMATCH;
    case consensus::ErrorCode::kIo:
      return CNS_ERR_IO;
    case consensus::ErrorCode::kAlgorithm:
      return CNS_ERR_ALGORITHM;
  }
  return CNS_ERR_INTERNAL;
}

cns_status fail(cns_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs fn, translating exceptions into status codes. Nothing may escape the
// C boundary.
template <typename Fn>
cns_status guarded(Fn&& fn) {
  try {
    fn();
    return CNS_OK;
  } catch (const consensus::Error& e) {
    return fail(to_status(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(CNS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(CNS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(CNS_ERR_INTERNAL, "unknown error");
  }
}

void require(bool condition, const char* message) {
  if (!condition) throw consensus::Error(consensus::ErrorCode::kInvalidArgument, message);
}

consensus::Normalization normalization_or(const char* name, consensus::Normalization fallback) {
  return name == nullptr ? fallback : consensus::parse_normalization(name);
}

}  // namespace

extern "C" {

const char* cns_version(void) { return "1.0.0"; }

const char* cns_last_error(void) { return g_last_error.c_str(); }

const char* cns_status_name(cns_status status) {
  switch (status) {
    case CNS_OK:
      return "ok";
    case CNS_ERR_INVALID_ARGUMENT:
      return "invalid argument";
    case CNS_ERR_SIZE_MISMATCH:
      return "size mismatch";
    case CNS_ERR_DIMENSION_MISMATCH:
      return "dimension mismatch";
    case CNS_ERR_IO:
      return "i/o error";
    case CNS_ERR_ALGORITHM:
      return "algorithm error";
    case CNS_ERR_INTERNAL:
      return "internal error";
  }
  return "unknown status";
}

// ---- datasets -------------------------------------------------------------

cns_status cns_dataset_read_csv(const char* path, cns_dataset** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new cns_dataset{consensus::read_data_csv(std::filesystem::path(path))};
  });
}

cns_status cns_dataset_create(const double* values, size_t rows, size_t cols, cns_dataset** out) {
  return guarded([&] {
    require(values != nullptr && out != nullptr, "null argument");
    consensus::Matrix m(rows, cols);
    for (size_t r = 0; r < rows; ++r) {
      for (size_t c = 0; c < cols; ++c) m(r, c) = values[r * cols + c];
    }
    *out = new cns_dataset{consensus::DataMatrix(std::move(m), {})};
  });
}

size_t cns_dataset_rows(const cns_dataset* data) { return data ? data->data.n() : 0; }

size_t cns_dataset_cols(const cns_dataset* data) { return data ? data->data.d() : 0; }

cns_status cns_dataset_row(const cns_dataset* data, size_t row, double* out, size_t capacity) {
  return guarded([&] {
    require(data != nullptr && out != nullptr, "null argument");
    require(row < data->data.n(), "row index out of range");
    if (capacity < data->data.d()) {
      throw consensus::Error(consensus::ErrorCode::kSizeMismatch, "output buffer too small");
    }
    const auto values = data->data.row(row);
    std::copy(values.begin(), values.end(), out);
  });
}

void cns_dataset_free(cns_dataset* data) { delete data; }

// ---- clusterings ----------------------------------------------------------

cns_status cns_clustering_create(const int32_t* labels, size_t n, cns_clustering** out) {
  return guarded([&] {
    require(labels != nullptr && out != nullptr, "null argument");
    *out = new cns_clustering{consensus::Clustering(std::span<const int32_t>(labels, n))};
  });
}

cns_status cns_clustering_read_csv(const char* path, cns_clustering** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new cns_clustering{consensus::read_labels_csv(std::filesystem::path(path))};
  });
}

cns_status cns_clustering_write_csv(const cns_clustering* c, const char* path) {
  return guarded([&] {
    require(c != nullptr && path != nullptr, "null argument");
    consensus::write_labels_csv(std::filesystem::path(path), c->labels);
  });
}

size_t cns_clustering_size(const cns_clustering* c) { return c ? c->labels.n() : 0; }

int32_t cns_clustering_k(const cns_clustering* c) { return c ? c->labels.k() : 0; }

cns_status cns_clustering_labels(const cns_clustering* c, int32_t* out, size_t capacity) {
  return guarded([&] {
    require(c != nullptr && out != nullptr, "null argument");
    if (capacity < c->labels.n()) {
      throw consensus::Error(consensus::ErrorCode::kSizeMismatch, "output buffer too small");
    }
    std::copy(c->labels.labels().begin(), c->labels.labels().end(), out);
  });
}

cns_status cns_clustering_equal(const cns_clustering* a, const cns_clustering* b, int* equal) {
  return guarded([&] {
    require(a != nullptr && b != nullptr && equal != nullptr, "null argument");
    *equal = consensus::partition_equal(a->labels, b->labels) ? 1 : 0;
  });
}

cns_status cns_adjusted_rand_index(const cns_clustering* a, const cns_clustering* b, double* out) {
  return guarded([&] {
    require(a != nullptr && b != nullptr && out != nullptr, "null argument");
    *out = consensus::adjusted_rand_index(a->labels, b->labels);
  });
}

void cns_clustering_free(cns_clustering* c) { delete c; }

// ---- ensembles ------------------------------------------------------------

cns_status cns_ensemble_create(cns_ensemble** out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    *out = new cns_ensemble{};
  });
}

cns_status cns_ensemble_add(cns_ensemble* e, const cns_clustering* member) {
  return guarded([&] {
    require(e != nullptr && member != nullptr, "null argument");
    if (!e->members.empty() && e->members.front().n() != member->labels.n()) {
      throw consensus::Error(consensus::ErrorCode::kSizeMismatch,
                             "member covers " + std::to_string(member->labels.n()) +
                                 " objects, ensemble covers " +
                                 std::to_string(e->members.front().n()));
    }
    e->members.push_back(member->labels);
  });
}

size_t cns_ensemble_size(const cns_ensemble* e) { return e ? e->members.size() : 0; }

cns_status cns_ensemble_member(const cns_ensemble* e, size_t index, cns_clustering** out) {
  return guarded([&] {
    require(e != nullptr && out != nullptr, "null argument");
    require(index < e->members.size(), "member index out of range");
    *out = new cns_clustering{e->members[index]};
  });
}

cns_status cns_ensemble_quality(const cns_ensemble* e, double* out, size_t capacity) {
  return guarded([&] {
    require(e != nullptr && out != nullptr, "null argument");
    require(e->members.size() >= 2, "quality needs at least 2 members");
    if (capacity < e->members.size()) {
      throw consensus::Error(consensus::ErrorCode::kSizeMismatch, "output buffer too small");
    }
    const auto q = consensus::quality_weights(
        consensus::ClusteringEnsemble(e->members).with_similarity());
    std::copy(q.begin(), q.end(), out);
  });
}

void cns_ensemble_free(cns_ensemble* e) { delete e; }

// ---- manifests ------------------------------------------------------------

cns_status cns_manifest_read(const char* path, cns_manifest** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    std::filesystem::path p(path);
    auto manifest = consensus::read_manifest(p);
    *out = new cns_manifest{std::move(p), std::move(manifest)};
  });
}

cns_status cns_manifest_ensemble(const cns_manifest* m, cns_ensemble** out) {
  return guarded([&] {
    require(m != nullptr && out != nullptr, "null argument");
    auto e = consensus::load_manifest_ensemble(m->path, m->manifest);
    *out = new cns_ensemble{e.members()};
  });
}

cns_status cns_manifest_dataset(const cns_manifest* m, cns_dataset** out) {
  return guarded([&] {
    require(m != nullptr && out != nullptr, "null argument");
    if (m->manifest.dataset.empty()) {
      throw consensus::Error(consensus::ErrorCode::kIo,
                             "manifest '" + m->path.string() + "' names no dataset");
    }
    const auto path = m->path.parent_path() / m->manifest.dataset;
    *out = new cns_dataset{consensus::read_data_csv(path)};
  });
}

const char* cns_manifest_normalization(const cns_manifest* m) {
  return m ? m->manifest.normalization.c_str() : "";
}

void cns_manifest_free(cns_manifest* m) { delete m; }

// ---- generation -----------------------------------------------------------

void cns_generate_options_init(cns_generate_options* options) {
  if (options == nullptr) return;
  const consensus::StratificationPlan plan;
  const consensus::EnsembleProtocol protocol;
  *options = cns_generate_options{};
  options->sample_size = 0;
  options->bins_per_feature = plan.bins_per_feature;
  options->min_stratum_size = plan.min_stratum_size;
  options->subspace_fraction = protocol.subspace_fraction;
  options->normalization = nullptr;
  options->seed = protocol.seed.value;
}

cns_status cns_generate(const cns_dataset* data, const cns_generate_options* options,
                        cns_generation** out) {
  return guarded([&] {
    require(data != nullptr && options != nullptr && out != nullptr, "null argument");
    require(options->k_schedule != nullptr || options->k_schedule_length == 0,
            "null k schedule");
    consensus::GenerationOptions o;
    o.plan.sample_size = options->sample_size;
    o.plan.bins_per_feature = options->bins_per_feature;
    o.plan.min_stratum_size = options->min_stratum_size;
    if (options->strata_features != nullptr) {
      o.plan.features.assign(options->strata_features,
                             options->strata_features + options->strata_feature_count);
    }
    o.protocol.k_schedule.assign(options->k_schedule,
                                 options->k_schedule + options->k_schedule_length);
    o.protocol.subspace_fraction = options->subspace_fraction;
    o.protocol.normalization =
        normalization_or(options->normalization, consensus::Normalization::kMinMax);
    o.protocol.seed = consensus::RandomSeed{options->seed};
    if (options->one_hot_columns != nullptr) {
      o.one_hot_columns.assign(options->one_hot_columns,
                               options->one_hot_columns + options->one_hot_count);
    }
    auto result = consensus::run_generation(data->data, o);
    *out = new cns_generation{std::move(o), std::move(result)};
  });
}

size_t cns_generation_member_count(const cns_generation* g) {
  return g ? g->result.ensemble.ensemble.size() : 0;
}

cns_status cns_generation_member_info(const cns_generation* g, size_t index, int32_t* k,
                                      double* quality) {
  return guarded([&] {
    require(g != nullptr, "null argument");
    const auto& e = g->result.ensemble.ensemble;
    require(index < e.size(), "member index out of range");
    if (k != nullptr) *k = e[index].k();
    if (quality != nullptr) {
      *quality = g->result.quality.empty() ? std::numeric_limits<double>::quiet_NaN()
                                           : g->result.quality[index];
    }
  });
}

cns_status cns_generation_ensemble(const cns_generation* g, cns_ensemble** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    *out = new cns_ensemble{g->result.ensemble.ensemble.members()};
  });
}

cns_status cns_generation_sample(const cns_generation* g, cns_dataset** out) {
  return guarded([&] {
    require(g != nullptr && out != nullptr, "null argument");
    *out = new cns_dataset{g->result.sample};
  });
}

cns_status cns_generation_write(const cns_generation* g, const char* dir) {
  return guarded([&] {
    require(g != nullptr && dir != nullptr, "null argument");
    consensus::write_generation(std::filesystem::path(dir), g->result, g->options);
  });
}

void cns_generation_free(cns_generation* g) { delete g; }

// ---- consensus ------------------------------------------------------------

void cns_consensus_options_init(cns_consensus_options* options) {
  if (options == nullptr) return;
  const consensus::ConsensusOptions d;
  *options = cns_consensus_options{};
  options->sweep_divisor = d.sweep_divisor;
  options->sweep_steps = d.sweep_steps;
  options->dedupe_refined = d.dedupe_refined ? 1 : 0;
  options->crossover_rate = d.ga.crossover_rate;
  options->mutation_rate = d.ga.mutation_rate;
  options->population_size = d.ga.population_size;
  options->generations = d.ga.generations;
  options->stall_generations = d.ga.stall_generations;
  options->mutation_step = d.ga.mutation_step;
  options->matching = CNS_MATCHING_GREEDY;
  options->objective_source = CNS_OBJECTIVES_UNION;
  options->seed = d.ga.seed.value;
}

cns_status cns_consensus_run(const cns_ensemble* base, const cns_consensus_options* options,
                             cns_consensus** out) {
  return guarded([&] {
    require(base != nullptr && options != nullptr && out != nullptr, "null argument");
    consensus::ConsensusOptions o;
    o.sweep_divisor = options->sweep_divisor;
    o.sweep_steps = options->sweep_steps;
    o.dedupe_refined = options->dedupe_refined != 0;
    o.ga.crossover_rate = options->crossover_rate;
    o.ga.mutation_rate = options->mutation_rate;
    o.ga.population_size = options->population_size;
    o.ga.generations = options->generations;
    o.ga.stall_generations = options->stall_generations;
    o.ga.mutation_step = options->mutation_step;
    switch (options->matching) {
      case CNS_MATCHING_GREEDY:
        o.ga.matching = consensus::MatchingStrategy::kGreedy;
        break;
      case CNS_MATCHING_OPTIMAL:
        o.ga.matching = consensus::MatchingStrategy::kOptimal;
        break;
      default:
        require(false, "unknown matching strategy");
    }
    switch (options->objective_source) {
      case CNS_OBJECTIVES_BASE:
        o.ga.objective_source = consensus::ObjectiveSource::kBase;
        break;
      case CNS_OBJECTIVES_REFINED:
        o.ga.objective_source = consensus::ObjectiveSource::kRefined;
        break;
      case CNS_OBJECTIVES_UNION:
        o.ga.objective_source = consensus::ObjectiveSource::kUnion;
        break;
      default:
        require(false, "unknown objective source");
    }
    o.ga.seed = consensus::RandomSeed{options->seed};
    auto result = consensus::run_consensus(consensus::ClusteringEnsemble(base->members), o);
    *out = new cns_consensus{std::move(result)};
  });
}

size_t cns_consensus_estimated_k(const cns_consensus* c) { return c ? c->result.estimated_k : 0; }

size_t cns_consensus_front_size(const cns_consensus* c) {
  return c ? c->result.evolution.front.solutions.size() : 0;
}

size_t cns_consensus_generations_run(const cns_consensus* c) {
  return c ? c->result.evolution.generations_run : 0;
}

cns_status cns_consensus_labels(const cns_consensus* c, cns_clustering** out) {
  return guarded([&] {
    require(c != nullptr && out != nullptr, "null argument");
    *out = new cns_clustering{c->result.consensus};
  });
}

cns_status cns_consensus_baseline(const cns_consensus* c, cns_clustering** out) {
  return guarded([&] {
    require(c != nullptr && out != nullptr, "null argument");
    *out = new cns_clustering{c->result.baseline};
  });
}

cns_status cns_consensus_scores(const cns_consensus* c, double* mean_ari, double* std_ari,
                                double* baseline_mean_ari, double* baseline_std_ari) {
  return guarded([&] {
    require(c != nullptr, "null argument");
    if (mean_ari != nullptr) *mean_ari = c->result.consensus_vs_base.mean_ari;
    if (std_ari != nullptr) *std_ari = c->result.consensus_vs_base.std_ari;
    if (baseline_mean_ari != nullptr) *baseline_mean_ari = c->result.baseline_vs_base.mean_ari;
    if (baseline_std_ari != nullptr) *baseline_std_ari = c->result.baseline_vs_base.std_ari;
  });
}

cns_status cns_consensus_write_front_csv(const cns_consensus* c, const char* path) {
  return guarded([&] {
    require(c != nullptr && path != nullptr, "null argument");
    auto out = consensus::open_for_write(path);
    consensus::write_front_csv(out, c->result.evolution.front);
  });
}

cns_status cns_consensus_write_sweep_csv(const cns_consensus* c, const char* path) {
  return guarded([&] {
    require(c != nullptr && path != nullptr, "null argument");
    auto out = consensus::open_for_write(path);
    consensus::write_sweep_csv(out, c->result.sweep);
  });
}

cns_status cns_consensus_write_trace_csv(const cns_consensus* c, const char* path) {
  return guarded([&] {
    require(c != nullptr && path != nullptr, "null argument");
    auto out = consensus::open_for_write(path);
    consensus::write_trace_csv(out, c->result.evolution.trace);
  });
}

cns_status cns_consensus_write_report(const cns_consensus* c, const char* path,
                                      cns_report_format format) {
  return guarded([&] {
    require(c != nullptr, "null argument");
    require(format == CNS_REPORT_TEXT || format == CNS_REPORT_JSON, "unknown report format");
    std::optional<std::ofstream> file;
    if (path != nullptr) file = consensus::open_for_write(path);
    std::ostream& out = file ? static_cast<std::ostream&>(*file) : std::cout;
    if (format == CNS_REPORT_JSON) {
      consensus::write_report_json(out, c->result);
    } else {
      consensus::write_report_text(out, c->result);
    }
    out.flush();
  });
}

void cns_consensus_free(cns_consensus* c) { delete c; }

// ---- mapping --------------------------------------------------------------

cns_status cns_model_fit(const cns_dataset* data, const cns_clustering* consensus,
                         const char* normalization, cns_model** out) {
  return guarded([&] {
    require(data != nullptr && consensus != nullptr && out != nullptr, "null argument");
    *out = new cns_model{consensus::fit_centroids(
        data->data, consensus->labels,
        normalization_or(normalization, consensus::Normalization::kNone))};
  });
}

cns_status cns_model_save(const cns_model* model, const char* path) {
  return guarded([&] {
    require(model != nullptr && path != nullptr, "null argument");
    model->model.save(path);
  });
}

cns_status cns_model_load(const char* path, cns_model** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new cns_model{consensus::CentroidModel::load(path)};
  });
}

size_t cns_model_k(const cns_model* model) { return model ? model->model.k() : 0; }

size_t cns_model_d(const cns_model* model) { return model ? model->model.d() : 0; }

cns_status cns_model_assign(const cns_model* model, const double* x, size_t d, int32_t* label) {
  return guarded([&] {
    require(model != nullptr && x != nullptr && label != nullptr, "null argument");
    *label = consensus::assign(model->model, std::span<const double>(x, d));
  });
}

cns_status cns_model_assign_knn(const cns_model* model, const double* x, size_t d, size_t k_nn,
                                int32_t* label) {
  return guarded([&] {
    require(model != nullptr && x != nullptr && label != nullptr, "null argument");
    *label = consensus::knn_assign(model->model, std::span<const double>(x, d), k_nn);
  });
}

cns_status cns_model_assign_csv(const cns_model* model, const char* data_path,
                                cns_assign_method method, size_t k_nn, const char* out_path) {
  return guarded([&] {
    require(model != nullptr && data_path != nullptr, "null argument");
    require(method == CNS_ASSIGN_CENTROID || method == CNS_ASSIGN_KNN, "unknown assign method");
    std::ifstream in(data_path);
    if (!in) {
      throw consensus::Error(consensus::ErrorCode::kIo,
                             std::string("cannot open '") + data_path + "' for reading");
    }
    const auto data = consensus::read_data_csv(in);

    std::vector<consensus::Label> labels;
    if (data) {
      if (data->d() != model->model.d()) {
        throw consensus::Error(consensus::ErrorCode::kDimensionMismatch,
                               "model expects " + std::to_string(model->model.d()) +
                                   " features, '" + data_path + "' has " +
                                   std::to_string(data->d()));
      }
      labels.reserve(data->n());
      for (size_t i = 0; i < data->n(); ++i) {
        labels.push_back(method == CNS_ASSIGN_KNN
                             ? consensus::knn_assign(model->model, data->row(i), k_nn)
                             : consensus::assign(model->model, data->row(i)));
      }
    }

    // Assigned labels are cluster ids of the model and must not be
    // renumbered, so they are written directly rather than as a Clustering.
    std::optional<std::ofstream> file;
    if (out_path != nullptr) file = consensus::open_for_write(out_path);
    std::ostream& out = file ? static_cast<std::ostream&>(*file) : std::cout;
    if (data) out << "label\n";
    for (auto l : labels) out << l << '\n';
    out.flush();
    if (!out) {
      throw consensus::Error(consensus::ErrorCode::kIo, "failed writing assignments");
    }
  });
}

void cns_model_free(cns_model* model) { delete model; }

}  // extern "C"
