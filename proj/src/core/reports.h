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

// JSON shapes of the persisted reports.

#ifndef NCCORESET_CORE_REPORTS_H_
#define NCCORESET_CORE_REPORTS_H_

#include <string>

#include "json.hpp"

#include "core/collapse.h"
#include "core/eval_metrics.h"
#include "core/sampler.h"
#include "core/toy_model.h"

namespace nccoreset {

// mu_real, mu_fake, n_real, n_fake, tr_sw, tr_sb, nc1
nlohmann::json GeometryJson(const ClassGeometry& geometry);

// eer_roc, map, auc, n_real, n_fake
nlohmann::json MetricsJson(const Metrics& metrics);

// w, b, loss
nlohmann::json ModelJson(const LinearModel& model);
// Throws InvalidConfig on a missing or mistyped field.
LinearModel ModelFromJson(const nlohmann::json& json);

// Chosen k, per-k candidates, overlap groups and per-cluster counts.
nlohmann::json FakeSamplingJson(const FakeSamplingResult& result);

// Two-space indented dump with a trailing newline; keys are sorted, so the
// text is a pure function of the value.
std::string DumpJson(const nlohmann::json& json);

// Throws MalformedRow when `text` is not JSON.
nlohmann::json ParseJson(const std::string& text);

}  // namespace nccoreset

#endif  // NCCORESET_CORE_REPORTS_H_
