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

// Class geometry of penultimate embeddings: class means, trace scatter
// statistics (NC1), nearest-class-mean assignment and the filter that keeps
// only correctly classified samples.

#ifndef NCCORESET_CORE_COLLAPSE_H_
#define NCCORESET_CORE_COLLAPSE_H_

#include <span>
#include <string>
#include <vector>

#include "core/embedding_io.h"

namespace nccoreset {

struct ClassGeometry {
  std::vector<double> mean_real;
  std::vector<double> mean_fake;
  size_t n_real = 0;
  size_t n_fake = 0;
  std::vector<double> global_mean;
  double within_class_scatter_trace = 0.0;   // Tr Sigma_W
  double between_class_scatter_trace = 0.0;  // Tr Sigma_B
  double nc1 = 0.0;                          // Tr Sigma_W / Tr Sigma_B

  const std::vector<double>& Mean(Label label) const {
    return label == Label::kReal ? mean_real : mean_fake;
  }
};

struct SampleDistance {
  std::string sample_id;
  double distance = 0.0;
  size_t record_index = 0;  // position in the source table
};

// Mean of the class-`label` embeddings, accumulated in double precision in
// record order. Throws EmptyClass.
std::vector<double> ClassMean(const EmbeddingTable& table, Label label);

// Throws EmptyClass, or DegenerateGeometry when the two class means coincide.
ClassGeometry ComputeGeometry(const EmbeddingTable& table);

double EuclideanDistance(std::span<const float> x, std::span<const double> y);
double EuclideanDistance(std::span<const double> x, std::span<const double> y);

// Distances of every class-`label` record to `mean`, ascending by distance,
// then sample_id.
std::vector<SampleDistance> DistanceScores(const EmbeddingTable& table,
                                           std::span<const double> mean,
                                           Label label);

// Same, restricted to the records at `indices`.
std::vector<SampleDistance> DistanceScores(const EmbeddingTable& table,
                                           std::span<const double> mean,
                                           std::span<const size_t> indices);

// Nearest class mean; an exact tie goes to Real.
Label NccAssign(std::span<const double> feature, const ClassGeometry& geometry);

// Records whose predicted label (score >= threshold means Fake) matches the
// ground truth, in table order. Throws MissingScore.
EmbeddingTable SamplesOfInterest(const EmbeddingTable& table,
                                 const ScoreTable& scores,
                                 double threshold = 0.5);

}  // namespace nccoreset

#endif  // NCCORESET_CORE_COLLAPSE_H_
