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

// Coreset selection. SelectClass keeps the samples nearest their class mean;
// SampleFakeClass clusters the fake class first and applies the same rule
// per cluster, with special handling for overlapping clusters; SelectRandom
// is the uniform baseline.

#ifndef NCCORESET_CORE_SAMPLER_H_
#define NCCORESET_CORE_SAMPLER_H_

#include <cstdint>
#include <vector>

#include "core/collapse.h"
#include "core/embedding_io.h"
#include "core/kmeans.h"

namespace nccoreset {

struct SamplingRule {
  enum class Mode : uint8_t { kThreshold, kTopFraction, kTopCount };

  Mode mode = Mode::kTopFraction;
  double value = 1.0;  // threshold t >= 0, fraction p in (0, 1], or count m

  static SamplingRule Threshold(double t) { return {Mode::kThreshold, t}; }
  static SamplingRule TopFraction(double p) { return {Mode::kTopFraction, p}; }
  static SamplingRule TopCount(size_t m) {
    return {Mode::kTopCount, static_cast<double>(m)};
  }

  // Throws InvalidConfig.
  void Validate() const;
  SelectionRule manifest_rule() const;
};

// ceil(p * n), clamped to [1, n] for n > 0. Products within 1e-9 (relative)
// of an integer are snapped to it so that e.g. 0.1 * 30 keeps 3.
size_t TopFractionCount(double p, size_t n);

// Length of the prefix of `sorted` (ascending distances) the rule keeps.
// TopCount larger than the list throws CountExceedsClass unless `clamp`.
size_t RuleKeepCount(const SamplingRule& rule,
                     const std::vector<SampleDistance>& sorted, bool clamp);

// Throws EmptyClass, CountExceedsClass, InvalidConfig.
SelectionManifest SelectClass(const EmbeddingTable& table, Label label,
                              const SamplingRule& rule);

// Uniform sample without replacement of `n_per_class` records per class.
// Class `label` draws from Rng(DeriveSeed(seed, label)) with a partial
// Fisher-Yates shuffle over the class's records in table order.
SelectionManifest SelectRandom(const EmbeddingTable& table,
                               size_t n_per_class, uint64_t seed);

enum class OverlapMode : uint8_t {
  // Keep a member of an overlapping cluster only when no other cluster of
  // its group would also claim it.
  kExclude,
  // Keep a member only when it passes the rule for its own cluster and for
  // the merged group.
  kMergedConsensus,
};

struct ClusterSelection {
  size_t cluster = 0;
  size_t group = 0;
  std::vector<double> mean;
  std::vector<size_t> members;  // table indices
  double cutoff = 0.0;          // distance claimed by the rule; -1 if none
  size_t candidates = 0;        // passing the rule for this cluster alone
  size_t selected = 0;
};

struct FakeSamplingResult {
  SelectionManifest manifest;
  SelectKResult selection;
  std::vector<std::vector<size_t>> groups;
  std::vector<ClusterSelection> clusters;  // empty for the k = 1 outcome
};

// Throws EmptyClass, and the k-means errors.
FakeSamplingResult SampleFakeClass(const EmbeddingTable& table,
                                   const SamplingRule& rule, size_t k_max,
                                   uint64_t seed, OverlapMode overlap_mode,
                                   int restarts = kDefaultRestarts);

// Disjoint union, re-sorted. Throws DuplicateSampleId.
SelectionManifest MergeManifests(const SelectionManifest& a,
                                 const SelectionManifest& b);

}  // namespace nccoreset

#endif  // NCCORESET_CORE_SAMPLER_H_
