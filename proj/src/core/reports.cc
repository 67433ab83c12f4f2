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

#include "core/reports.h"

#include <cmath>

#include "core/error.h"

namespace nccoreset {

using nlohmann::json;

json GeometryJson(const ClassGeometry& g) {
  return json{{"mu_real", g.mean_real},
              {"mu_fake", g.mean_fake},
              {"n_real", g.n_real},
              {"n_fake", g.n_fake},
              {"tr_sw", g.within_class_scatter_trace},
              {"tr_sb", g.between_class_scatter_trace},
              {"nc1", g.nc1}};
}

json MetricsJson(const Metrics& m) {
  return json{{"eer_roc", m.eer_roc},
              {"map", m.map},
              {"auc", m.auc},
              {"n_real", m.n_real},
              {"n_fake", m.n_fake}};
}

json ModelJson(const LinearModel& model) {
  return json{{"w", model.weights},
              {"b", model.bias},
              {"loss", model.training_log}};
}

LinearModel ModelFromJson(const json& j) {
  LinearModel model;
  try {
    model.weights = j.at("w").get<std::vector<double>>();
    model.bias = j.at("b").get<double>();
    if (j.contains("loss"))
      model.training_log = j.at("loss").get<std::vector<double>>();
  } catch (const json::exception& e) {
    Fail(ErrorCode::kInvalidConfig, std::string("bad model JSON: ") + e.what());
  }
  if (model.weights.empty())
    Fail(ErrorCode::kInvalidConfig, "model JSON has no weights");
  for (double w : model.weights)
    if (!std::isfinite(w))
      Fail(ErrorCode::kNonFiniteValue, "model weight is not finite");
  if (!std::isfinite(model.bias))
    Fail(ErrorCode::kNonFiniteValue, "model bias is not finite");
  return model;
}

json FakeSamplingJson(const FakeSamplingResult& r) {
  json candidates = json::array();
  for (const auto& c : r.selection.candidates)
    candidates.push_back({{"k", c.k},
                          {"valid", c.valid},
                          {"overlap_score", c.overlap_score},
                          {"inertia", c.inertia}});
  json clusters = json::array();
  for (const auto& c : r.clusters)
    clusters.push_back({{"cluster", c.cluster},
                        {"group", c.group},
                        {"members", c.members.size()},
                        {"cutoff", c.cutoff},
                        {"candidates", c.candidates},
                        {"selected", c.selected},
                        {"radius", r.selection.clustering.radii[c.cluster]}});
  return json{{"k", r.selection.clustering.k},
              {"overlap_score", r.selection.report.overlap_score},
              {"inertia", r.selection.clustering.inertia},
              {"candidates", candidates},
              {"groups", r.groups},
              {"clusters", clusters},
              {"selected", r.manifest.rows.size()}};
}

std::string DumpJson(const json& j) { return j.dump(2) + "\n"; }

json ParseJson(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    Fail(ErrorCode::kMalformedRow, std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace nccoreset
