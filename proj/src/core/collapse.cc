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

#include "core/collapse.h"

#include <algorithm>
#include <cmath>

#include "core/error.h"

namespace nccoreset {

namespace {

double SquaredDistance(std::span<const float> x, std::span<const double> y) {
  double sum = 0.0;
  for (size_t j = 0; j < x.size(); ++j) {
    const double diff = static_cast<double>(x[j]) - y[j];
    sum += diff * diff;
  }
  return sum;
}

void SortByDistance(std::vector<SampleDistance>* out) {
  std::sort(out->begin(), out->end(),
            [](const SampleDistance& a, const SampleDistance& b) {
              if (a.distance != b.distance) return a.distance < b.distance;
              return a.sample_id < b.sample_id;
            });
}

}  // namespace

std::vector<double> ClassMean(const EmbeddingTable& table, Label label) {
  std::vector<double> sum(table.dimension(), 0.0);
  size_t n = 0;
  for (const auto& r : table.records()) {
    if (r.label != label) continue;
    for (size_t j = 0; j < sum.size(); ++j) sum[j] += r.embedding[j];
    ++n;
  }
  if (n == 0)
    Fail(ErrorCode::kEmptyClass,
         "class '" + std::string(LabelToken(label)) + "' has no records");
  for (double& v : sum) v /= static_cast<double>(n);
  return sum;
}

ClassGeometry ComputeGeometry(const EmbeddingTable& table) {
  ClassGeometry g;
  g.mean_real = ClassMean(table, Label::kReal);
  g.mean_fake = ClassMean(table, Label::kFake);
  g.n_real = table.Count(Label::kReal);
  g.n_fake = table.Count(Label::kFake);
  if (g.mean_real == g.mean_fake)
    Fail(ErrorCode::kDegenerateGeometry,
         "class means are identical; nc1 is undefined");

  const double n = static_cast<double>(g.n_real + g.n_fake);
  const size_t d = table.dimension();
  g.global_mean.resize(d);
  for (size_t j = 0; j < d; ++j)
    g.global_mean[j] = (static_cast<double>(g.n_real) * g.mean_real[j] +
                        static_cast<double>(g.n_fake) * g.mean_fake[j]) /
                       n;

  double within = 0.0;
  for (const auto& r : table.records())
    within += SquaredDistance(r.embedding, g.Mean(r.label));
  g.within_class_scatter_trace = within / n;

  double between = 0.0;
  for (Label k : kLabels) {
    const auto& mu = g.Mean(k);
    double sq = 0.0;
    for (size_t j = 0; j < d; ++j) {
      const double diff = mu[j] - g.global_mean[j];
      sq += diff * diff;
    }
    const double n_k = static_cast<double>(k == Label::kReal ? g.n_real
                                                             : g.n_fake);
    between += n_k / n * sq;
  }
  g.between_class_scatter_trace = between;
  if (!(between > 0.0))
    Fail(ErrorCode::kDegenerateGeometry,
         "between-class scatter underflows to zero; nc1 is undefined");
  g.nc1 = g.within_class_scatter_trace / between;
  return g;
}

double EuclideanDistance(std::span<const float> x, std::span<const double> y) {
  return std::sqrt(SquaredDistance(x, y));
}

double EuclideanDistance(std::span<const double> x,
                         std::span<const double> y) {
  double sum = 0.0;
  for (size_t j = 0; j < x.size(); ++j) {
    const double diff = x[j] - y[j];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

std::vector<SampleDistance> DistanceScores(const EmbeddingTable& table,
                                           std::span<const double> mean,
                                           Label label) {
  std::vector<size_t> indices;
  for (size_t i = 0; i < table.size(); ++i)
    if (table[i].label == label) indices.push_back(i);
  return DistanceScores(table, mean, indices);
}

std::vector<SampleDistance> DistanceScores(const EmbeddingTable& table,
                                           std::span<const double> mean,
                                           std::span<const size_t> indices) {
  if (mean.size() != table.dimension())
    Fail(ErrorCode::kDimensionMismatch,
         "mean has dimension " + std::to_string(mean.size()) +
             ", table has " + std::to_string(table.dimension()));
  std::vector<SampleDistance> out;
  out.reserve(indices.size());
  for (size_t i : indices) {
    const auto& r = table[i];
    out.push_back({r.sample_id, EuclideanDistance(r.embedding, mean), i});
  }
  SortByDistance(&out);
  return out;
}

Label NccAssign(std::span<const double> feature,
                const ClassGeometry& geometry) {
  if (feature.size() != geometry.mean_real.size())
    Fail(ErrorCode::kDimensionMismatch,
         "feature has dimension " + std::to_string(feature.size()) +
             ", geometry has " + std::to_string(geometry.mean_real.size()));
  const double to_real = EuclideanDistance(feature, geometry.mean_real);
  const double to_fake = EuclideanDistance(feature, geometry.mean_fake);
  return to_real <= to_fake ? Label::kReal : Label::kFake;
}

EmbeddingTable SamplesOfInterest(const EmbeddingTable& table,
                                 const ScoreTable& scores, double threshold) {
  EmbeddingTable out(table.dimension());
  for (const auto& r : table.records()) {
    const ScoreRow* s = scores.Find(r.sample_id);
    if (s == nullptr)
      Fail(ErrorCode::kMissingScore,
           "no score for sample '" + r.sample_id + "'");
    const Label predicted = s->score >= threshold ? Label::kFake : Label::kReal;
    if (predicted == r.label) out.Add(r);
  }
  return out;
}

}  // namespace nccoreset
