/*
 * Copyright 2026 The Consensus Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of libconsensus.
 *
 * Every object is an opaque handle created by a cns_*_create/read/run call
 * and released with the matching cns_*_free. Functions that can fail return
 * a cns_status; on failure cns_last_error() describes the problem for the
 * calling thread until its next failing call. Output handles are only
 * written on success. Handles are immutable after creation except for
 * cns_ensemble_add(), so concurrent read-only use is safe.
 */

#ifndef CONSENSUS_CONSENSUS_H_
#define CONSENSUS_CONSENSUS_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define CNS_API __declspec(dllexport)
#else
#define CNS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cns_status {
  CNS_OK = 0,
  CNS_ERR_INVALID_ARGUMENT = 1,
  CNS_ERR_SIZE_MISMATCH = 2,
  CNS_ERR_DIMENSION_MISMATCH = 3,
  CNS_ERR_IO = 4,
  /* The inputs were well-formed but the algorithm could not proceed, e.g. a
     degenerate ensemble. */
  CNS_ERR_ALGORITHM = 5,
  CNS_ERR_INTERNAL = 6
} cns_status;

typedef enum cns_objective_source {
  CNS_OBJECTIVES_BASE = 0,
  CNS_OBJECTIVES_REFINED = 1,
  CNS_OBJECTIVES_UNION = 2
} cns_objective_source;

typedef enum cns_matching {
  CNS_MATCHING_GREEDY = 0,
  CNS_MATCHING_OPTIMAL = 1
} cns_matching;

typedef enum cns_assign_method {
  CNS_ASSIGN_CENTROID = 0,
  CNS_ASSIGN_KNN = 1
} cns_assign_method;

typedef enum cns_report_format {
  CNS_REPORT_TEXT = 0,
  CNS_REPORT_JSON = 1
} cns_report_format;

typedef struct cns_dataset cns_dataset;
typedef struct cns_clustering cns_clustering;
typedef struct cns_ensemble cns_ensemble;
typedef struct cns_manifest cns_manifest;
typedef struct cns_generation cns_generation;
typedef struct cns_consensus cns_consensus;
typedef struct cns_model cns_model;

CNS_API const char* cns_version(void);
/* Message for the last failed call on this thread; "" if none. */
CNS_API const char* cns_last_error(void);
CNS_API const char* cns_status_name(cns_status status);

/* ---- datasets ---------------------------------------------------------- */

/* Feature CSV with a header row. Missing or non-numeric cells are errors. */
CNS_API cns_status cns_dataset_read_csv(const char* path, cns_dataset** out);
/* Row-major rows x cols values; feature names default to f0, f1, ... */
CNS_API cns_status cns_dataset_create(const double* values, size_t rows, size_t cols,
                                      cns_dataset** out);
CNS_API size_t cns_dataset_rows(const cns_dataset* data);
CNS_API size_t cns_dataset_cols(const cns_dataset* data);
CNS_API cns_status cns_dataset_row(const cns_dataset* data, size_t row, double* out,
                                   size_t capacity);
CNS_API void cns_dataset_free(cns_dataset* data);

/* ---- clusterings ------------------------------------------------------- */

/* Labels are any positive integers; they are renumbered 1..k by first
   appearance. */
CNS_API cns_status cns_clustering_create(const int32_t* labels, size_t n, cns_clustering** out);
CNS_API cns_status cns_clustering_read_csv(const char* path, cns_clustering** out);
CNS_API cns_status cns_clustering_write_csv(const cns_clustering* c, const char* path);
CNS_API size_t cns_clustering_size(const cns_clustering* c);
CNS_API int32_t cns_clustering_k(const cns_clustering* c);
CNS_API cns_status cns_clustering_labels(const cns_clustering* c, int32_t* out, size_t capacity);
CNS_API cns_status cns_clustering_equal(const cns_clustering* a, const cns_clustering* b,
                                        int* equal);
CNS_API cns_status cns_adjusted_rand_index(const cns_clustering* a, const cns_clustering* b,
                                           double* out);
CNS_API void cns_clustering_free(cns_clustering* c);

/* ---- ensembles --------------------------------------------------------- */

CNS_API cns_status cns_ensemble_create(cns_ensemble** out);
/* Copies the clustering into the ensemble. */
CNS_API cns_status cns_ensemble_add(cns_ensemble* e, const cns_clustering* member);
CNS_API size_t cns_ensemble_size(const cns_ensemble* e);
CNS_API cns_status cns_ensemble_member(const cns_ensemble* e, size_t index, cns_clustering** out);
/* Mean ARI of each member against the others; needs >= 2 members. */
CNS_API cns_status cns_ensemble_quality(const cns_ensemble* e, double* out, size_t capacity);
CNS_API void cns_ensemble_free(cns_ensemble* e);

/* ---- manifests --------------------------------------------------------- */

CNS_API cns_status cns_manifest_read(const char* path, cns_manifest** out);
CNS_API cns_status cns_manifest_ensemble(const cns_manifest* m, cns_ensemble** out);
/* The sampled dataset the members were computed on. CNS_ERR_IO when the
   manifest names none or it cannot be read. */
CNS_API cns_status cns_manifest_dataset(const cns_manifest* m, cns_dataset** out);
CNS_API const char* cns_manifest_normalization(const cns_manifest* m);
CNS_API void cns_manifest_free(cns_manifest* m);

/* ---- base ensemble generation ----------------------------------------- */

typedef struct cns_generate_options {
  size_t sample_size;        /* 0 keeps every row */
  size_t bins_per_feature;   /* default 4 */
  const size_t* strata_features;  /* NULL selects the first three columns */
  size_t strata_feature_count;
  size_t min_stratum_size;   /* default 2 */
  const size_t* k_schedule;  /* one k-means run per entry, each >= 2 */
  size_t k_schedule_length;
  double subspace_fraction;  /* default 0.7 */
  const char* normalization; /* "none" | "minmax" | "zscore"; default minmax */
  const size_t* one_hot_columns;
  size_t one_hot_count;
  uint64_t seed;
} cns_generate_options;

CNS_API void cns_generate_options_init(cns_generate_options* options);
CNS_API cns_status cns_generate(const cns_dataset* data, const cns_generate_options* options,
                                cns_generation** out);
CNS_API size_t cns_generation_member_count(const cns_generation* g);
/* quality is NaN for a single-member ensemble. */
CNS_API cns_status cns_generation_member_info(const cns_generation* g, size_t index, int32_t* k,
                                              double* quality);
CNS_API cns_status cns_generation_ensemble(const cns_generation* g, cns_ensemble** out);
CNS_API cns_status cns_generation_sample(const cns_generation* g, cns_dataset** out);
/* Writes sample.csv, member_NN.csv and manifest.json into dir. */
CNS_API cns_status cns_generation_write(const cns_generation* g, const char* dir);
CNS_API void cns_generation_free(cns_generation* g);

/* ---- consensus --------------------------------------------------------- */

typedef struct cns_consensus_options {
  int sweep_divisor;         /* t, default 10 */
  int sweep_steps;           /* default 100 */
  int dedupe_refined;        /* default 1 */
  double crossover_rate;     /* default 0.9 */
  double mutation_rate;      /* default 0.01 */
  size_t population_size;    /* 0 selects twice the ensemble size */
  size_t generations;        /* default 100 */
  size_t stall_generations;  /* default 20, 0 disables early stop */
  double mutation_step;      /* default 1.5 */
  cns_matching matching;
  cns_objective_source objective_source;
  uint64_t seed;
} cns_consensus_options;

CNS_API void cns_consensus_options_init(cns_consensus_options* options);
CNS_API cns_status cns_consensus_run(const cns_ensemble* base, const cns_consensus_options* options,
                                     cns_consensus** out);
CNS_API size_t cns_consensus_estimated_k(const cns_consensus* c);
CNS_API size_t cns_consensus_front_size(const cns_consensus* c);
CNS_API size_t cns_consensus_generations_run(const cns_consensus* c);
CNS_API cns_status cns_consensus_labels(const cns_consensus* c, cns_clustering** out);
CNS_API cns_status cns_consensus_baseline(const cns_consensus* c, cns_clustering** out);
/* Mean and standard deviation of ARI against the base ensemble for the
   consensus and for the evidence-accumulation baseline. Any pointer may be
   NULL. */
CNS_API cns_status cns_consensus_scores(const cns_consensus* c, double* mean_ari, double* std_ari,
                                        double* baseline_mean_ari, double* baseline_std_ari);
CNS_API cns_status cns_consensus_write_front_csv(const cns_consensus* c, const char* path);
CNS_API cns_status cns_consensus_write_sweep_csv(const cns_consensus* c, const char* path);
CNS_API cns_status cns_consensus_write_trace_csv(const cns_consensus* c, const char* path);
CNS_API cns_status cns_consensus_write_report(const cns_consensus* c, const char* path,
                                              cns_report_format format);
CNS_API void cns_consensus_free(cns_consensus* c);

/* ---- mapping ----------------------------------------------------------- */

CNS_API cns_status cns_model_fit(const cns_dataset* data, const cns_clustering* consensus,
                                 const char* normalization, cns_model** out);
CNS_API cns_status cns_model_save(const cns_model* model, const char* path);
CNS_API cns_status cns_model_load(const char* path, cns_model** out);
CNS_API size_t cns_model_k(const cns_model* model);
CNS_API size_t cns_model_d(const cns_model* model);
/* x holds d raw (unnormalized) feature values. */
CNS_API cns_status cns_model_assign(const cns_model* model, const double* x, size_t d,
                                    int32_t* label);
CNS_API cns_status cns_model_assign_knn(const cns_model* model, const double* x, size_t d,
                                        size_t k_nn, int32_t* label);
/* Labels every row of a feature CSV, writing a "label" column. An empty
   input file yields empty output. out_path NULL writes to stdout. */
CNS_API cns_status cns_model_assign_csv(const cns_model* model, const char* data_path,
                                        cns_assign_method method, size_t k_nn,
                                        const char* out_path);
CNS_API void cns_model_free(cns_model* model);

#ifdef __cplusplus
}
#endif

#endif /* CONSENSUS_CONSENSUS_H_ */
