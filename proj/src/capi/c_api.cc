// Copyright (c) 2026 The nc-coreset Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nccoreset/nccoreset.h"

#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <new>
#include <set>
#include <string>
#include <utility>

#include "core/collapse.h"
#include "core/embedding_io.h"
#include "core/error.h"
#include "core/eval_metrics.h"
#include "core/features.h"
#include "core/projection.h"
#include "core/reports.h"
#include "core/sampler.h"
#include "core/toy_model.h"

struct nc_table {
  nccoreset::EmbeddingTable value;
};
struct nc_scores {
  nccoreset::ScoreTable value;
};
struct nc_manifest {
  nccoreset::SelectionManifest value;
};
struct nc_model {
  nccoreset::LinearModel value;
};

namespace {

using nccoreset::ErrorCode;

thread_local std::string g_last_error;

nc_status Report(ErrorCode code, const std::string& message) {
  g_last_error = message;
  return static_cast<nc_status>(code);
}

// Runs `body`, translating exceptions into a status and the thread-local
// message. A successful call clears the message.
template <typename Body>
nc_status Guard(Body&& body) {
  try {
    body();
    g_last_error.clear();
    return NC_OK;
  } catch (const nccoreset::Error& e) {
    return Report(e.code(), e.what());
  } catch (const std::bad_alloc&) {
    return Report(ErrorCode::kInternal, "out of memory");
  } catch (const std::exception& e) {
    return Report(ErrorCode::kInternal, e.what());
  } catch (...) {
    return Report(ErrorCode::kInternal, "unknown exception");
  }
}

void Require(bool ok, const char* what) {
  if (!ok)
    nccoreset::Fail(ErrorCode::kInvalidArgument,
                    std::string(what) + " must not be null");
}

char* CopyString(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.data(), s.size() + 1);
  return out;
}

nccoreset::Label ToLabel(nc_label label) {
  if (label != NC_LABEL_REAL && label != NC_LABEL_FAKE)
    nccoreset::Fail(ErrorCode::kInvalidArgument, "label must be 0 or 1");
  return static_cast<nccoreset::Label>(label);
}

nccoreset::SamplingRule ToRule(nc_rule rule) {
  nccoreset::SamplingRule out;
  switch (rule.mode) {
    case NC_RULE_THRESHOLD:
      out.mode = nccoreset::SamplingRule::Mode::kThreshold;
      break;
    case NC_RULE_TOP_FRACTION:
      out.mode = nccoreset::SamplingRule::Mode::kTopFraction;
      break;
    case NC_RULE_TOP_COUNT:
      out.mode = nccoreset::SamplingRule::Mode::kTopCount;
      break;
    default:
      nccoreset::Fail(ErrorCode::kInvalidArgument, "unknown rule mode");
  }
  out.value = rule.value;
  return out;
}

}  // namespace

extern "C" {

const char* nc_version(void) { return "1.0.0"; }

const char* nc_status_name(nc_status status) {
  if (status < 0 || status >= nccoreset::kErrorCodeCount) return "Unknown";
  // The names are string literals, so data() is NUL-terminated.
  return nccoreset::ErrorCodeName(static_cast<ErrorCode>(status)).data();
}

const char* nc_last_error(void) { return g_last_error.c_str(); }

void nc_string_free(char* str) { std::free(str); }

nc_status nc_table_load(const char* path, nc_table** out) {
  return Guard([&] {
    Require(path && out, "path and out");
    *out = new nc_table{nccoreset::LoadTable(path)};
  });
}

nc_status nc_table_store(const nc_table* table, const char* path) {
  return Guard([&] {
    Require(table && path, "table and path");
    nccoreset::StoreTable(table->value, path);
  });
}

void nc_table_free(nc_table* table) { delete table; }

uint32_t nc_table_dimension(const nc_table* table) {
  return table ? table->value.dimension() : 0;
}

uint64_t nc_table_size(const nc_table* table) {
  return table ? table->value.size() : 0;
}

uint64_t nc_table_count(const nc_table* table, nc_label label) {
  if (!table || (label != NC_LABEL_REAL && label != NC_LABEL_FAKE)) return 0;
  return table->value.Count(static_cast<nccoreset::Label>(label));
}

uint32_t nc_table_fake_algorithms(const nc_table* table) {
  if (!table) return 0;
  std::set<uint32_t> ids;
  for (const auto& r : table->value.records())
    if (r.label == nccoreset::Label::kFake && r.algorithm_id != 0)
      ids.insert(r.algorithm_id);
  return static_cast<uint32_t>(ids.size());
}

nc_status nc_table_subset(const nc_table* table, const nc_manifest* manifest,
                          nc_table** out) {
  return Guard([&] {
    Require(table && manifest && out, "table, manifest and out");
    *out = new nc_table{nccoreset::SubsetTable(table->value, manifest->value)};
  });
}

void nc_synth_config_default(nc_synth_config* cfg) {
  if (!cfg) return;
  const nccoreset::SyntheticConfig d;
  cfg->dimension = d.dimension;
  cfg->n_real = d.n_real;
  cfg->n_fake = d.n_fake;
  cfg->fake_modes = d.fake_modes;
  cfg->mode_separation = d.mode_separation;
  cfg->within_std = d.within_std;
  cfg->seed = d.seed;
}

nc_status nc_synth_generate(const nc_synth_config* cfg, nc_table** out) {
  return Guard([&] {
    Require(cfg && out, "cfg and out");
    nccoreset::SyntheticConfig c;
    c.dimension = cfg->dimension;
    c.n_real = cfg->n_real;
    c.n_fake = cfg->n_fake;
    c.fake_modes = cfg->fake_modes;
    c.mode_separation = cfg->mode_separation;
    c.within_std = cfg->within_std;
    c.seed = cfg->seed;
    *out = new nc_table{nccoreset::GenerateSynthetic(c)};
  });
}

nc_status nc_extract_features(const char* manifest_path, const char* base_dir,
                              nc_table** out) {
  return Guard([&] {
    Require(manifest_path && out, "manifest_path and out");
    const std::string base =
        base_dir ? std::string(base_dir)
                 : std::filesystem::path(manifest_path).parent_path().string();
    *out = new nc_table{nccoreset::ExtractFeatureTable(manifest_path, base)};
  });
}

nc_status nc_scores_load(const char* path, nc_scores** out) {
  return Guard([&] {
    Require(path && out, "path and out");
    *out = new nc_scores{nccoreset::ReadScoreTable(path)};
  });
}

nc_status nc_scores_store(const nc_scores* scores, const char* path) {
  return Guard([&] {
    Require(scores && path, "scores and path");
    nccoreset::WriteScoreTable(scores->value, path);
  });
}

void nc_scores_free(nc_scores* scores) { delete scores; }

uint64_t nc_scores_size(const nc_scores* scores) {
  return scores ? scores->value.size() : 0;
}

nc_status nc_interest_filter(const nc_table* table, const nc_scores* scores,
                             double threshold, nc_table** out) {
  return Guard([&] {
    Require(table && scores && out, "table, scores and out");
    *out = new nc_table{
        nccoreset::SamplesOfInterest(table->value, scores->value, threshold)};
  });
}

nc_status nc_geometry_json(const nc_table* table, char** json_out) {
  return Guard([&] {
    Require(table && json_out, "table and json_out");
    const auto geometry = nccoreset::ComputeGeometry(table->value);
    *json_out =
        CopyString(nccoreset::DumpJson(nccoreset::GeometryJson(geometry)));
  });
}

nc_status nc_projection_csv(const nc_table* table, char** csv_out) {
  return Guard([&] {
    Require(table && csv_out, "table and csv_out");
    const auto projection = nccoreset::ProjectPca(table->value);
    *csv_out =
        CopyString(nccoreset::FormatProjectionCsv(table->value, projection));
  });
}

nc_status nc_select_class(const nc_table* table, nc_label label, nc_rule rule,
                          nc_manifest** out) {
  return Guard([&] {
    Require(table && out, "table and out");
    *out = new nc_manifest{
        nccoreset::SelectClass(table->value, ToLabel(label), ToRule(rule))};
  });
}

nc_status nc_sample_fake(const nc_table* table, nc_rule rule, uint32_t k_max,
                         uint64_t seed, nc_overlap_mode overlap_mode,
                         nc_manifest** out, char** report_json) {
  return Guard([&] {
    Require(table && out, "table and out");
    nccoreset::OverlapMode mode;
    switch (overlap_mode) {
      case NC_OVERLAP_EXCLUDE:
        mode = nccoreset::OverlapMode::kExclude;
        break;
      case NC_OVERLAP_MERGED:
        mode = nccoreset::OverlapMode::kMergedConsensus;
        break;
      default:
        nccoreset::Fail(ErrorCode::kInvalidArgument, "unknown overlap mode");
    }
    auto result = nccoreset::SampleFakeClass(table->value, ToRule(rule), k_max,
                                             seed, mode);
    char* report = nullptr;
    if (report_json)
      report = CopyString(
          nccoreset::DumpJson(nccoreset::FakeSamplingJson(result)));
    *out = new nc_manifest{std::move(result.manifest)};
    if (report_json) *report_json = report;
  });
}

nc_status nc_select_random(const nc_table* table, uint64_t n_per_class,
                           uint64_t seed, nc_manifest** out) {
  return Guard([&] {
    Require(table && out, "table and out");
    *out = new nc_manifest{
        nccoreset::SelectRandom(table->value, n_per_class, seed)};
  });
}

nc_status nc_manifest_merge(const nc_manifest* a, const nc_manifest* b,
                            nc_manifest** out) {
  return Guard([&] {
    Require(a && b && out, "a, b and out");
    *out = new nc_manifest{nccoreset::MergeManifests(a->value, b->value)};
  });
}

nc_status nc_manifest_load(const char* path, nc_manifest** out) {
  return Guard([&] {
    Require(path && out, "path and out");
    *out = new nc_manifest{nccoreset::ReadManifest(path)};
  });
}

nc_status nc_manifest_store(const nc_manifest* manifest, const char* path) {
  return Guard([&] {
    Require(manifest && path, "manifest and path");
    nccoreset::WriteManifest(manifest->value, path);
  });
}

void nc_manifest_free(nc_manifest* manifest) { delete manifest; }

uint64_t nc_manifest_size(const nc_manifest* manifest) {
  return manifest ? manifest->value.rows.size() : 0;
}

uint64_t nc_manifest_count(const nc_manifest* manifest, nc_label label) {
  if (!manifest) return 0;
  uint64_t n = 0;
  for (const auto& row : manifest->value.rows)
    if (static_cast<int>(row.label) == static_cast<int>(label)) ++n;
  return n;
}

nc_status nc_model_train(const nc_table* table, int32_t epochs,
                         double learning_rate, uint64_t seed, nc_model** out) {
  return Guard([&] {
    Require(table && out, "table and out");
    *out = new nc_model{
        nccoreset::TrainLinear(table->value, epochs, learning_rate, seed)};
  });
}

nc_status nc_model_load(const char* path, nc_model** out) {
  return Guard([&] {
    Require(path && out, "path and out");
    const auto json = nccoreset::ParseJson(nccoreset::ReadFileBytes(path));
    *out = new nc_model{nccoreset::ModelFromJson(json)};
  });
}

nc_status nc_model_json(const nc_model* model, char** json_out) {
  return Guard([&] {
    Require(model && json_out, "model and json_out");
    *json_out =
        CopyString(nccoreset::DumpJson(nccoreset::ModelJson(model->value)));
  });
}

void nc_model_free(nc_model* model) { delete model; }

nc_status nc_model_predict(const nc_model* model, const nc_table* table,
                           nc_scores** out) {
  return Guard([&] {
    Require(model && table && out, "model, table and out");
    *out = new nc_scores{nccoreset::PredictScores(model->value, table->value)};
  });
}

nc_status nc_model_grad_check(const nc_model* model, const nc_table* table,
                              double epsilon, double* max_relative_error) {
  return Guard([&] {
    Require(model && table && max_relative_error,
            "model, table and max_relative_error");
    *max_relative_error =
        nccoreset::GradCheck(model->value, table->value, epsilon)
            .max_relative_error;
  });
}

nc_status nc_evaluate(const nc_scores* scores, nc_metrics* out) {
  return Guard([&] {
    Require(scores && out, "scores and out");
    const auto m = nccoreset::Evaluate(scores->value);
    out->eer_roc = m.eer_roc;
    out->map = m.map;
    out->auc = m.auc;
    out->n_real = m.n_real;
    out->n_fake = m.n_fake;
  });
}

}  // extern "C"
