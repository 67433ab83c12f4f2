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

#include "core/kmeans.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "core/error.h"
#include "core/rng.h"

namespace nccoreset {

namespace {

double SquaredDistance(std::span<const double> a, std::span<const double> b) {
  double sum = 0.0;
  for (size_t j = 0; j < a.size(); ++j) {
    const double diff = a[j] - b[j];
    sum += diff * diff;
  }
  return sum;
}

// Index drawn with probability d2[i] / sum(d2), skipping zero weights.
size_t DrawProportional(const std::vector<double>& d2, double total, Rng* rng) {
  const double target = rng->Uniform01() * total;
  double cumulative = 0.0;
  size_t last_positive = 0;
  for (size_t i = 0; i < d2.size(); ++i) {
    if (d2[i] <= 0.0) continue;
    last_positive = i;
    cumulative += d2[i];
    if (cumulative > target) return i;
  }
  return last_positive;
}

// Greedy k-means++: every center after the first is the best of
// 2 + floor(ln k) D^2-weighted candidates, scored by the summed squared
// distance to the nearest chosen center once the candidate is added.
// Candidates are drawn in sequence and ties keep the earlier draw.
std::vector<std::vector<double>> PlusPlusSeeds(const PointSet& points,
                                               size_t k, Rng* rng) {
  const size_t n = points.size();
  const size_t trials =
      2 + static_cast<size_t>(std::floor(std::log(static_cast<double>(k))));
  std::vector<std::vector<double>> centers;
  centers.reserve(k);
  const auto first = points.Row(rng->UniformIndex(n));
  centers.emplace_back(first.begin(), first.end());
  std::vector<double> d2(n);
  for (size_t i = 0; i < n; ++i) d2[i] = SquaredDistance(points.Row(i), first);

  std::vector<double> candidate_d2(n), best_d2(n);
  while (centers.size() < k) {
    double total = 0.0;
    for (double v : d2) total += v;
    if (total <= 0.0) {
      // Every point coincides with a chosen center.
      const auto row = points.Row(rng->UniformIndex(n));
      centers.emplace_back(row.begin(), row.end());
      continue;
    }
    size_t best = n;
    double best_potential = 0.0;
    for (size_t t = 0; t < trials; ++t) {
      const size_t pick = DrawProportional(d2, total, rng);
      const auto row = points.Row(pick);
      double potential = 0.0;
      for (size_t i = 0; i < n; ++i) {
        candidate_d2[i] = std::min(d2[i], SquaredDistance(points.Row(i), row));
        potential += candidate_d2[i];
      }
      if (best == n || potential < best_potential) {
        best = pick;
        best_potential = potential;
        best_d2.swap(candidate_d2);
      }
    }
    const auto row = points.Row(best);
    centers.emplace_back(row.begin(), row.end());
    d2.swap(best_d2);
  }
  return centers;
}

// Nearest center per point (ties to the lowest index); returns inertia.
double Assign(const PointSet& points,
              const std::vector<std::vector<double>>& centers,
              std::vector<size_t>* assignments) {
  double inertia = 0.0;
  for (size_t i = 0; i < points.size(); ++i) {
    const auto x = points.Row(i);
    size_t best = 0;
    double best_d2 = SquaredDistance(x, centers[0]);
    for (size_t j = 1; j < centers.size(); ++j) {
      const double d2 = SquaredDistance(x, centers[j]);
      if (d2 < best_d2) {
        best_d2 = d2;
        best = j;
      }
    }
    (*assignments)[i] = best;
    inertia += best_d2;
  }
  return inertia;
}

// Member means in point order; empty clusters keep their previous center.
std::vector<size_t> UpdateCenters(const PointSet& points,
                                  const std::vector<size_t>& assignments,
                                  std::vector<std::vector<double>>* centers) {
  const size_t k = centers->size();
  const size_t d = points.dimension();
  std::vector<std::vector<double>> sums(k, std::vector<double>(d, 0.0));
  std::vector<size_t> sizes(k, 0);
  for (size_t i = 0; i < points.size(); ++i) {
    const auto x = points.Row(i);
    auto& s = sums[assignments[i]];
    for (size_t j = 0; j < d; ++j) s[j] += x[j];
    ++sizes[assignments[i]];
  }
  for (size_t c = 0; c < k; ++c) {
    if (sizes[c] == 0) continue;
    for (size_t j = 0; j < d; ++j)
      (*centers)[c][j] = sums[c][j] / static_cast<double>(sizes[c]);
  }
  return sizes;
}

// Each empty cluster takes over the point farthest from its own center
// (among clusters with more than one member) as a singleton. Clusters stay
// empty when every candidate distance is zero.
void RepairEmptyClusters(const PointSet& points,
                         std::vector<std::vector<double>>* centers,
                         std::vector<size_t>* assignments,
                         std::vector<size_t>* sizes) {
  for (size_t c = 0; c < centers->size(); ++c) {
    if ((*sizes)[c] != 0) continue;
    size_t farthest = points.size();
    double farthest_d2 = 0.0;
    for (size_t i = 0; i < points.size(); ++i) {
      const size_t owner = (*assignments)[i];
      if ((*sizes)[owner] <= 1) continue;
      const double d2 = SquaredDistance(points.Row(i), (*centers)[owner]);
      if (d2 > farthest_d2) {
        farthest_d2 = d2;
        farthest = i;
      }
    }
    if (farthest == points.size()) continue;
    const auto row = points.Row(farthest);
    (*centers)[c].assign(row.begin(), row.end());
    --(*sizes)[(*assignments)[farthest]];
    (*assignments)[farthest] = c;
    (*sizes)[c] = 1;
  }
}

double Percentile(std::vector<double> values, double q) {
  if (values.empty()) return 0.0;
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<size_t>(std::floor(pos));
  const size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

bool BetterCandidate(const KCandidate& a, const KCandidate& b) {
  if (a.overlap_score != b.overlap_score)
    return a.overlap_score < b.overlap_score;
  if (a.k != b.k) return a.k > b.k;
  return a.inertia < b.inertia;
}

}  // namespace

void PointSet::Add(std::span<const double> point) {
  if (point.size() != dimension_)
    Fail(ErrorCode::kDimensionMismatch,
         "point has dimension " + std::to_string(point.size()) +
             ", expected " + std::to_string(dimension_));
  values_.insert(values_.end(), point.begin(), point.end());
}

bool Clustering::HasEmptyCluster() const {
  return std::any_of(sizes.begin(), sizes.end(),
                     [](size_t s) { return s == 0; });
}

void RefreshClusterStats(const PointSet& points, Clustering* c) {
  c->sizes.assign(c->k, 0);
  std::vector<std::vector<double>> member_distances(c->k);
  double inertia = 0.0;
  for (size_t i = 0; i < points.size(); ++i) {
    const size_t owner = c->assignments[i];
    const double d2 = SquaredDistance(points.Row(i), c->centers[owner]);
    inertia += d2;
    ++c->sizes[owner];
    member_distances[owner].push_back(std::sqrt(d2));
  }
  c->inertia = inertia;
  c->radii.resize(c->k);
  for (size_t j = 0; j < c->k; ++j)
    c->radii[j] = Percentile(std::move(member_distances[j]), kRadiusPercentile);
}

Clustering KMeans(const PointSet& points, size_t k, uint64_t seed,
                  int max_iter, double tol) {
  const size_t n = points.size();
  if (n == 0) Fail(ErrorCode::kEmptyInput, "k-means needs at least one point");
  if (k == 0 || k > n)
    Fail(ErrorCode::kKTooLarge, "k = " + std::to_string(k) +
                                    " is outside [1, " + std::to_string(n) +
                                    "]");
  Rng rng(seed);
  Clustering c;
  c.k = k;
  c.centers = PlusPlusSeeds(points, k, &rng);
  c.assignments.assign(n, 0);
  c.inertia_history.push_back(Assign(points, c.centers, &c.assignments));

  bool stale_centers = false;
  for (int iter = 1; iter <= max_iter; ++iter) {
    const std::vector<size_t> previous = c.assignments;
    const auto old_centers = c.centers;
    auto sizes = UpdateCenters(points, c.assignments, &c.centers);
    RepairEmptyClusters(points, &c.centers, &c.assignments, &sizes);
    double movement = 0.0;
    for (size_t j = 0; j < k; ++j)
      movement = std::max(movement,
                          std::sqrt(SquaredDistance(c.centers[j],
                                                    old_centers[j])));
    c.inertia_history.push_back(Assign(points, c.centers, &c.assignments));
    c.iterations_run = iter;
    const bool changed = c.assignments != previous;
    stale_centers = changed;
    if (!changed || movement < tol) break;
  }
  if (stale_centers) {
    // Stopped on tolerance or max_iter with fresh assignments; make each
    // center the mean of its final members.
    UpdateCenters(points, c.assignments, &c.centers);
  }
  RefreshClusterStats(points, &c);
  if (stale_centers) c.inertia_history.push_back(c.inertia);
  return c;
}

Clustering KMeansBestOf(const PointSet& points, size_t k, uint64_t seed,
                        int restarts) {
  if (restarts < 1)
    Fail(ErrorCode::kInvalidArgument, "restarts must be >= 1");
  Clustering best;
  for (int r = 0; r < restarts; ++r) {
    Clustering c = KMeans(points, k, DeriveSeed(seed, static_cast<uint64_t>(r)));
    if (r == 0 || c.inertia < best.inertia) best = std::move(c);
  }
  return best;
}

OverlapReport ComputeOverlapReport(const Clustering& c) {
  if (c.k < 2)
    Fail(ErrorCode::kSingleCluster, "overlap needs at least two clusters");
  if (c.HasEmptyCluster())
    Fail(ErrorCode::kEmptyCluster, "clustering has an empty cluster");
  OverlapReport report;
  report.k = c.k;
  report.margins.assign(c.k * c.k, 0.0);
  report.overlaps.assign(c.k * c.k, false);
  size_t overlapping = 0;
  for (size_t a = 0; a < c.k; ++a) {
    for (size_t b = a + 1; b < c.k; ++b) {
      const double gap = std::sqrt(SquaredDistance(c.centers[a], c.centers[b]));
      const double margin = gap - (c.radii[a] + c.radii[b]);
      const bool overlap = margin < 0.0;
      report.margins[a * c.k + b] = report.margins[b * c.k + a] = margin;
      report.overlaps[a * c.k + b] = report.overlaps[b * c.k + a] = overlap;
      if (overlap) ++overlapping;
    }
  }
  const double pairs = static_cast<double>(c.k * (c.k - 1) / 2);
  report.overlap_score = static_cast<double>(overlapping) / pairs;
  return report;
}

std::vector<std::vector<size_t>> OverlapGroups(const OverlapReport& report) {
  std::vector<size_t> parent(report.k);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (size_t a = 0; a < report.k; ++a)
    for (size_t b = a + 1; b < report.k; ++b)
      if (report.Overlap(a, b)) {
        const size_t ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
      }
  std::vector<std::vector<size_t>> groups;
  std::vector<size_t> group_of(report.k, report.k);
  for (size_t a = 0; a < report.k; ++a) {
    const size_t root = find(a);
    if (group_of[root] == report.k) {
      group_of[root] = groups.size();
      groups.emplace_back();
    }
    groups[group_of[root]].push_back(a);
  }
  return groups;
}

SelectKResult SelectK(const PointSet& points, size_t k_max, uint64_t seed,
                      int restarts) {
  if (points.size() == 0)
    Fail(ErrorCode::kEmptyInput, "cluster-count search needs points");
  if (k_max == 0) Fail(ErrorCode::kInvalidArgument, "k_max must be >= 1");

  SelectKResult result;
  bool have_best = false;
  KCandidate best;
  const size_t k_hi = std::min(k_max, points.size());
  for (size_t k = 2; k <= k_hi; ++k) {
    Clustering c = KMeansBestOf(points, k, seed, restarts);
    KCandidate cand;
    cand.k = k;
    cand.inertia = c.inertia;
    cand.valid = !c.HasEmptyCluster();
    if (cand.valid) {
      OverlapReport report = ComputeOverlapReport(c);
      cand.overlap_score = report.overlap_score;
      if (!have_best || BetterCandidate(cand, best)) {
        have_best = true;
        best = cand;
        result.clustering = std::move(c);
        result.report = std::move(report);
      }
    }
    result.candidates.push_back(cand);
  }
  if (!have_best) {
    result.clustering = KMeansBestOf(points, 1, seed, restarts);
    result.report = OverlapReport{};
  }
  return result;
}

}  // namespace nccoreset
