/* Copyright (c) 2026 The nc-coreset Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

/*
 * C interface of the nc-coreset library.
 *
 * Objects are opaque handles created by nc_*_load / nc_*_generate / the
 * operations below and released with the matching nc_*_free. Every fallible
 * call returns an nc_status; on failure the out-pointer is left untouched
 * and nc_last_error() holds a message for the calling thread. Strings
 * returned through char** are heap-allocated and released with
 * nc_string_free. Handles are immutable after creation and may be shared
 * read-only across threads.
 */

#ifndef NCCORESET_NCCORESET_H_
#define NCCORESET_NCCORESET_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(NCCORESET_BUILDING)
#    define NC_API __declspec(dllexport)
#  else
#    define NC_API __declspec(dllimport)
#  endif
#else
#  define NC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Values are stable; the CLI exit code for a status s is 10 + s. */
typedef enum nc_status {
  NC_OK = 0,
  NC_ERR_BAD_MAGIC = 1,
  NC_ERR_VERSION_MISMATCH = 2,
  NC_ERR_TRUNCATED_FILE = 3,
  NC_ERR_DIMENSION_MISMATCH = 4,
  NC_ERR_NON_FINITE_VALUE = 5,
  NC_ERR_DUPLICATE_SAMPLE_ID = 6,
  NC_ERR_IO_FAILURE = 7,
  NC_ERR_INVARIANT_VIOLATION = 8,
  NC_ERR_MALFORMED_ROW = 9,
  NC_ERR_UNKNOWN_LABEL_TOKEN = 10,
  NC_ERR_EMPTY_CLASS = 11,
  NC_ERR_DEGENERATE_GEOMETRY = 12,
  NC_ERR_MISSING_SCORE = 13,
  NC_ERR_K_TOO_LARGE = 14,
  NC_ERR_EMPTY_INPUT = 15,
  NC_ERR_SINGLE_CLUSTER = 16,
  NC_ERR_EMPTY_CLUSTER = 17,
  NC_ERR_COUNT_EXCEEDS_CLASS = 18,
  NC_ERR_SINGLE_CLASS_ONLY = 19,
  NC_ERR_UNSUPPORTED_FORMAT = 20,
  NC_ERR_CORRUPT_FILE = 21,
  NC_ERR_EMPTY_CLIP = 22,
  NC_ERR_CLIP_TOO_SHORT = 23,
  NC_ERR_NEGATIVE_POWER = 24,
  NC_ERR_SHAPE_MISMATCH = 25,
  NC_ERR_INVALID_CONFIG = 26,
  NC_ERR_DIVERGENCE_DETECTED = 27,
  NC_ERR_INVALID_ARGUMENT = 28,
  NC_ERR_INTERNAL = 29
} nc_status;

typedef enum nc_label { NC_LABEL_REAL = 0, NC_LABEL_FAKE = 1 } nc_label;

typedef enum nc_rule_mode {
  NC_RULE_THRESHOLD = 0,    /* keep distance <= value */
  NC_RULE_TOP_FRACTION = 1, /* keep the ceil(value * n) nearest */
  NC_RULE_TOP_COUNT = 2     /* keep the value nearest */
} nc_rule_mode;

typedef struct nc_rule {
  nc_rule_mode mode;
  double value;
} nc_rule;

typedef enum nc_overlap_mode {
  NC_OVERLAP_EXCLUDE = 0,
  NC_OVERLAP_MERGED = 1
} nc_overlap_mode;

typedef struct nc_synth_config {
  uint32_t dimension;
  uint64_t n_real;
  uint64_t n_fake;
  uint32_t fake_modes;
  double mode_separation;
  double within_std;
  uint64_t seed;
} nc_synth_config;

typedef struct nc_metrics {
  double eer_roc;
  double map;
  double auc;
  uint64_t n_real;
  uint64_t n_fake;
} nc_metrics;

typedef struct nc_table nc_table;
typedef struct nc_scores nc_scores;
typedef struct nc_manifest nc_manifest;
typedef struct nc_model nc_model;

/* Diagnostics */
NC_API const char* nc_version(void);
NC_API const char* nc_status_name(nc_status status);
NC_API const char* nc_last_error(void);
NC_API void nc_string_free(char* str);

/* Embedding tables (.nceb) */
NC_API nc_status nc_table_load(const char* path, nc_table** out);
NC_API nc_status nc_table_store(const nc_table* table, const char* path);
NC_API void nc_table_free(nc_table* table);
NC_API uint32_t nc_table_dimension(const nc_table* table);
NC_API uint64_t nc_table_size(const nc_table* table);
NC_API uint64_t nc_table_count(const nc_table* table, nc_label label);
/* Number of distinct non-zero algorithm_id values among fake records. */
NC_API uint32_t nc_table_fake_algorithms(const nc_table* table);
/* Records named by the manifest, in table order. */
NC_API nc_status nc_table_subset(const nc_table* table,
                                 const nc_manifest* manifest, nc_table** out);

NC_API void nc_synth_config_default(nc_synth_config* cfg);
NC_API nc_status nc_synth_generate(const nc_synth_config* cfg, nc_table** out);

/* Manifest CSV `path,label,algorithm_id` of 16 kHz mono PCM WAV files to an
 * 80-band log-mel table. Relative paths resolve against base_dir, or against
 * the manifest's directory when base_dir is NULL. */
NC_API nc_status nc_extract_features(const char* manifest_path,
                                     const char* base_dir, nc_table** out);

/* Score tables (CSV `sample_id,label,score`) */
NC_API nc_status nc_scores_load(const char* path, nc_scores** out);
NC_API nc_status nc_scores_store(const nc_scores* scores, const char* path);
NC_API void nc_scores_free(nc_scores* scores);
NC_API uint64_t nc_scores_size(const nc_scores* scores);

/* Records whose prediction (score >= threshold means fake) is correct. */
NC_API nc_status nc_interest_filter(const nc_table* table,
                                    const nc_scores* scores, double threshold,
                                    nc_table** out);

/* Class geometry as JSON: mu_real, mu_fake, n_real, n_fake, tr_sw, tr_sb,
 * nc1. */
NC_API nc_status nc_geometry_json(const nc_table* table, char** json_out);
/* 2-D PCA projection CSV `sample_id,label,pc1,pc2`. */
NC_API nc_status nc_projection_csv(const nc_table* table, char** csv_out);

/* Selection manifests (CSV `sample_id,label,cluster_id,distance,rule`) */
NC_API nc_status nc_select_class(const nc_table* table, nc_label label,
                                 nc_rule rule, nc_manifest** out);
/* Cluster-wise fake sampling. report_json (nullable) receives the chosen k,
 * the per-k candidates and the overlap groups. */
NC_API nc_status nc_sample_fake(const nc_table* table, nc_rule rule,
                                uint32_t k_max, uint64_t seed,
                                nc_overlap_mode overlap_mode,
                                nc_manifest** out, char** report_json);
NC_API nc_status nc_select_random(const nc_table* table, uint64_t n_per_class,
                                  uint64_t seed, nc_manifest** out);
NC_API nc_status nc_manifest_merge(const nc_manifest* a, const nc_manifest* b,
                                   nc_manifest** out);
NC_API nc_status nc_manifest_load(const char* path, nc_manifest** out);
NC_API nc_status nc_manifest_store(const nc_manifest* manifest,
                                   const char* path);
NC_API void nc_manifest_free(nc_manifest* manifest);
NC_API uint64_t nc_manifest_size(const nc_manifest* manifest);
NC_API uint64_t nc_manifest_count(const nc_manifest* manifest, nc_label label);

/* Logistic toy classifier */
NC_API nc_status nc_model_train(const nc_table* table, int32_t epochs,
                                double learning_rate, uint64_t seed,
                                nc_model** out);
/* Reads a model JSON ({"w": [...], "b": ..., "loss": [...]}); other keys are
 * ignored. */
NC_API nc_status nc_model_load(const char* path, nc_model** out);
NC_API nc_status nc_model_json(const nc_model* model, char** json_out);
NC_API void nc_model_free(nc_model* model);
NC_API nc_status nc_model_predict(const nc_model* model, const nc_table* table,
                                  nc_scores** out);
NC_API nc_status nc_model_grad_check(const nc_model* model,
                                     const nc_table* table, double epsilon,
                                     double* max_relative_error);

/* EER-ROC, two-class mean average precision and AUC. */
NC_API nc_status nc_evaluate(const nc_scores* scores, nc_metrics* out);

#ifdef __cplusplus
}
#endif

#endif /* NCCORESET_NCCORESET_H_ */
