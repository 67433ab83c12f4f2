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

// Deterministic Lloyd's k-means with k-means++ seeding, the cluster overlap
// report and the overlap-driven search over the cluster count.

#ifndef NCCORESET_CORE_KMEANS_H_
#define NCCORESET_CORE_KMEANS_H_

#include <cstdint>
#include <span>
#include <vector>

namespace nccoreset {

// Row-major set of points of a common dimension.
class PointSet {
 public:
  explicit PointSet(size_t dimension) : dimension_(dimension) {}

  void Add(std::span<const double> point);
  template <typename T>
  void AddConverted(std::span<const T> point) {
    std::vector<double> row(point.begin(), point.end());
    Add(row);
  }

  size_t dimension() const { return dimension_; }
  size_t size() const {
    return dimension_ == 0 ? 0 : values_.size() / dimension_;
  }
  std::span<const double> Row(size_t i) const {
    return {values_.data() + i * dimension_, dimension_};
  }

 private:
  size_t dimension_;
  std::vector<double> values_;
};

struct Clustering {
  size_t k = 0;
  std::vector<std::vector<double>> centers;
  std::vector<size_t> assignments;
  std::vector<size_t> sizes;
  double inertia = 0.0;
  // 90th percentile (linear interpolation) of member-to-center distances;
  // 0 for an empty cluster.
  std::vector<double> radii;
  int iterations_run = 0;
  // Inertia after the initial assignment and after every Lloyd step.
  std::vector<double> inertia_history;

  bool HasEmptyCluster() const;
};

inline constexpr int kDefaultMaxIter = 300;
inline constexpr double kDefaultTol = 1e-6;
inline constexpr int kDefaultRestarts = 8;
inline constexpr double kRadiusPercentile = 0.9;

// Lloyd iterations from greedy k-means++ seeds drawn from Rng(seed): the
// first center is a uniform point, each later one the best of
// 2 + floor(ln k) squared-distance-weighted draws. Stops when no assignment
// changes or the largest center move is below `tol`.
// Throws EmptyInput, KTooLarge (k > points or k == 0).
Clustering KMeans(const PointSet& points, size_t k, uint64_t seed,
                  int max_iter = kDefaultMaxIter, double tol = kDefaultTol);

// Lowest-inertia run over `restarts` seeds; restart r uses
// DeriveSeed(seed, r). Ties keep the earlier restart.
Clustering KMeansBestOf(const PointSet& points, size_t k, uint64_t seed,
                        int restarts = kDefaultRestarts);

// Recomputes member counts, inertia and radii from centers + assignments.
void RefreshClusterStats(const PointSet& points, Clustering* c);

struct OverlapReport {
  size_t k = 0;
  // k x k row-major; the diagonal is unused (margin 0, overlap false).
  std::vector<double> margins;
  std::vector<bool> overlaps;
  double overlap_score = 0.0;  // fraction of unordered pairs that overlap

  double Margin(size_t a, size_t b) const { return margins[a * k + b]; }
  bool Overlap(size_t a, size_t b) const { return overlaps[a * k + b]; }
};

// margin(a, b) = |center_a - center_b| - (radius_a + radius_b); overlap iff
// margin < 0. Throws SingleCluster, EmptyCluster.
OverlapReport ComputeOverlapReport(const Clustering& c);

// Connected components of the overlap graph, each sorted ascending, ordered
// by smallest member.
std::vector<std::vector<size_t>> OverlapGroups(const OverlapReport& report);

struct KCandidate {
  size_t k = 0;
  bool valid = false;  // false when the best run left a cluster empty
  double overlap_score = 0.0;
  double inertia = 0.0;
};

struct SelectKResult {
  Clustering clustering;
  OverlapReport report;  // k == 0 for the single-cluster outcome
  std::vector<KCandidate> candidates;
};

// Tries k = 2..k_max (k = 1 only when k_max == 1) and keeps the clustering
// with the smallest overlap score, preferring larger k, then lower inertia.
// Falls back to k = 1 when no k >= 2 yields non-empty clusters.
SelectKResult SelectK(const PointSet& points, size_t k_max, uint64_t seed,
                      int restarts = kDefaultRestarts);

}  // namespace nccoreset

#endif  // NCCORESET_CORE_KMEANS_H_
