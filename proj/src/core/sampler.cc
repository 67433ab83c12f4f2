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

#include "core/sampler.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "core/error.h"
#include "core/rng.h"

namespace nccoreset {

namespace {

std::vector<double> MeanOf(const EmbeddingTable& table,
                           const std::vector<size_t>& indices) {
  std::vector<double> mean(table.dimension(), 0.0);
  for (size_t i : indices)
    for (size_t j = 0; j < mean.size(); ++j) mean[j] += table[i].embedding[j];
  for (double& v : mean) v /= static_cast<double>(indices.size());
  return mean;
}

// Largest distance the rule accepts, given how many entries it keeps.
double CutoffDistance(const SamplingRule& rule,
                      const std::vector<SampleDistance>& sorted,
                      size_t keep) {
  if (rule.mode == SamplingRule::Mode::kThreshold) return rule.value;
  return keep == 0 ? -1.0 : sorted[keep - 1].distance;
}

}  // namespace

void SamplingRule::Validate() const {
  switch (mode) {
    case Mode::kThreshold:
      if (!(value >= 0.0) || std::isnan(value))
        Fail(ErrorCode::kInvalidConfig, "threshold must be >= 0");
      return;
    case Mode::kTopFraction:
      if (!(value > 0.0 && value <= 1.0))
        Fail(ErrorCode::kInvalidConfig, "fraction must be in (0, 1]");
      return;
    case Mode::kTopCount:
      if (!(value >= 1.0) || value != std::floor(value) || value > 9.0e15)
        Fail(ErrorCode::kInvalidConfig, "count must be a positive integer");
      return;
  }
}

SelectionRule SamplingRule::manifest_rule() const {
  switch (mode) {
    case Mode::kThreshold: return SelectionRule::kThreshold;
    case Mode::kTopFraction: return SelectionRule::kTopFraction;
    case Mode::kTopCount: return SelectionRule::kTopCount;
  }
  return SelectionRule::kThreshold;
}

size_t TopFractionCount(double p, size_t n) {
  if (n == 0) return 0;
  const double x = p * static_cast<double>(n);
  const double nearest = std::round(x);
  const double count = std::abs(x - nearest) <= 1e-9 * std::max(1.0, x)
                           ? nearest
                           : std::ceil(x);
  return std::clamp<size_t>(static_cast<size_t>(count), 1, n);
}

size_t RuleKeepCount(const SamplingRule& rule,
                     const std::vector<SampleDistance>& sorted, bool clamp) {
  switch (rule.mode) {
    case SamplingRule::Mode::kThreshold: {
      size_t keep = 0;
      while (keep < sorted.size() && sorted[keep].distance <= rule.value)
        ++keep;
      return keep;
    }
    case SamplingRule::Mode::kTopFraction:
      return TopFractionCount(rule.value, sorted.size());
    case SamplingRule::Mode::kTopCount: {
      const auto m = static_cast<size_t>(rule.value);
      if (m > sorted.size()) {
        if (clamp) return sorted.size();
        Fail(ErrorCode::kCountExceedsClass,
             "count " + std::to_string(m) + " exceeds class size " +
                 std::to_string(sorted.size()));
      }
      return m;
    }
  }
  return 0;
}

SelectionManifest SelectClass(const EmbeddingTable& table, Label label,
                              const SamplingRule& rule) {
  rule.Validate();
  const auto mean = ClassMean(table, label);
  const auto distances = DistanceScores(table, mean, label);
  const size_t keep = RuleKeepCount(rule, distances, /*clamp=*/false);
  SelectionManifest manifest;
  manifest.rows.reserve(keep);
  for (size_t i = 0; i < keep; ++i)
    manifest.rows.push_back({distances[i].sample_id, label, -1,
                             distances[i].distance, rule.manifest_rule()});
  SortManifest(&manifest);
  return manifest;
}

SelectionManifest SelectRandom(const EmbeddingTable& table,
                               size_t n_per_class, uint64_t seed) {
  SelectionManifest manifest;
  for (Label label : kLabels) {
    std::vector<size_t> pool;
    for (size_t i = 0; i < table.size(); ++i)
      if (table[i].label == label) pool.push_back(i);
    if (n_per_class > pool.size())
      Fail(ErrorCode::kCountExceedsClass,
           "requested " + std::to_string(n_per_class) + " " +
               std::string(LabelToken(label)) + " samples, class has " +
               std::to_string(pool.size()));
    Rng rng(DeriveSeed(seed, static_cast<uint64_t>(label)));
    for (size_t i = 0; i < n_per_class; ++i) {
      const size_t j = i + rng.UniformIndex(pool.size() - i);
      std::swap(pool[i], pool[j]);
      manifest.rows.push_back(
          {table[pool[i]].sample_id, label, -1, 0.0, SelectionRule::kRandom});
    }
  }
  SortManifest(&manifest);
  return manifest;
}

FakeSamplingResult SampleFakeClass(const EmbeddingTable& table,
                                   const SamplingRule& rule, size_t k_max,
                                   uint64_t seed, OverlapMode overlap_mode,
                                   int restarts) {
  rule.Validate();
  std::vector<size_t> fake;
  for (size_t i = 0; i < table.size(); ++i)
    if (table[i].label == Label::kFake) fake.push_back(i);
  if (fake.empty())
    Fail(ErrorCode::kEmptyClass, "class 'fake' has no records");

  PointSet points(table.dimension());
  for (size_t i : fake)
    points.AddConverted(std::span<const float>(table[i].embedding));

  FakeSamplingResult result;
  result.selection = SelectK(points, k_max, seed, restarts);
  const Clustering& clustering = result.selection.clustering;
  if (clustering.k == 1) {
    result.manifest = SelectClass(table, Label::kFake, rule);
    return result;
  }

  result.groups = OverlapGroups(result.selection.report);
  std::vector<size_t> group_of(clustering.k);
  for (size_t g = 0; g < result.groups.size(); ++g)
    for (size_t c : result.groups[g]) group_of[c] = g;

  // Per-cluster means, distances and rule outcome.
  std::vector<std::vector<SampleDistance>> sorted(clustering.k);
  result.clusters.resize(clustering.k);
  for (size_t p = 0; p < fake.size(); ++p)
    result.clusters[clustering.assignments[p]].members.push_back(fake[p]);
  for (size_t c = 0; c < clustering.k; ++c) {
    auto& info = result.clusters[c];
    info.cluster = c;
    info.group = group_of[c];
    info.mean = MeanOf(table, info.members);
    sorted[c] = DistanceScores(table, info.mean, info.members);
    info.candidates = RuleKeepCount(rule, sorted[c], /*clamp=*/true);
    info.cutoff = CutoffDistance(rule, sorted[c], info.candidates);
  }

  std::unordered_map<std::string, ManifestRow> chosen;
  auto keep_row = [&chosen](ManifestRow row) {
    auto it = chosen.find(row.sample_id);
    if (it == chosen.end())
      chosen.emplace(row.sample_id, std::move(row));
    else if (row.distance < it->second.distance)
      it->second = std::move(row);
  };

  for (const auto& group : result.groups) {
    std::unordered_set<size_t> merged_keep;
    if (group.size() > 1 && overlap_mode == OverlapMode::kMergedConsensus) {
      std::vector<size_t> all;
      for (size_t c : group)
        all.insert(all.end(), result.clusters[c].members.begin(),
                   result.clusters[c].members.end());
      const auto merged_mean = MeanOf(table, all);
      const auto merged = DistanceScores(table, merged_mean, all);
      const size_t keep = RuleKeepCount(rule, merged, /*clamp=*/true);
      for (size_t i = 0; i < keep; ++i)
        merged_keep.insert(merged[i].record_index);
    }
    for (size_t c : group) {
      auto& info = result.clusters[c];
      for (size_t i = 0; i < info.candidates; ++i) {
        const SampleDistance& s = sorted[c][i];
        bool accept = true;
        if (group.size() > 1) {
          if (overlap_mode == OverlapMode::kExclude) {
            for (size_t other : group) {
              if (other == c) continue;
              const double d = EuclideanDistance(
                  table[s.record_index].embedding, result.clusters[other].mean);
              if (d <= result.clusters[other].cutoff) {
                accept = false;
                break;
              }
            }
          } else {
            accept = merged_keep.count(s.record_index) > 0;
          }
        }
        if (!accept) continue;
        ++info.selected;
        keep_row({s.sample_id, Label::kFake, static_cast<int64_t>(c),
                  s.distance, SelectionRule::kClusterThreshold});
      }
    }
  }

  result.manifest.rows.reserve(chosen.size());
  for (auto& [id, row] : chosen) result.manifest.rows.push_back(std::move(row));
  SortManifest(&result.manifest);
  return result;
}

SelectionManifest MergeManifests(const SelectionManifest& a,
                                 const SelectionManifest& b) {
  std::unordered_set<std::string_view> ids;
  SelectionManifest merged;
  merged.rows.reserve(a.rows.size() + b.rows.size());
  for (const auto* m : {&a, &b}) {
    for (const auto& row : m->rows) {
      if (!ids.insert(row.sample_id).second)
        Fail(ErrorCode::kDuplicateSampleId,
             "sample_id '" + row.sample_id + "' appears in both manifests");
      merged.rows.push_back(row);
    }
  }
  SortManifest(&merged);
  return merged;
}

}  // namespace nccoreset
