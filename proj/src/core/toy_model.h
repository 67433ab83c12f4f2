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

// Desk-scale stand-ins for a trained detector: a seeded generator of
// real/fake embeddings with a multi-modal fake class, and a logistic
// classifier trained by full-batch gradient descent.

#ifndef NCCORESET_CORE_TOY_MODEL_H_
#define NCCORESET_CORE_TOY_MODEL_H_

#include <cstdint>
#include <vector>

#include "core/embedding_io.h"

namespace nccoreset {

struct SyntheticConfig {
  uint32_t dimension = 16;
  size_t n_real = 2000;
  size_t n_fake = 14000;
  uint32_t fake_modes = 7;
  double mode_separation = 6.0;
  double within_std = 1.0;
  uint64_t seed = 42;

  // Throws InvalidConfig.
  void Validate() const;
};

// Real ~ N(anchor, within_std^2 I) with anchor = (1, ..., 1). Fake mode m
// (m = 0..fake_modes-1) is centred at anchor + mode_separation * e_{axis[m]}
// where `axis` is a seeded permutation of the coordinate axes, so modes are
// pairwise sqrt(2) * mode_separation apart and all lie on the same side of
// the real class. Fake record i belongs to mode i % fake_modes and carries
// algorithm_id = mode + 1. Ids are "real-NNNNNN" / "fake-NNNNNN"; reals come
// first. Requires fake_modes <= dimension.
EmbeddingTable GenerateSynthetic(const SyntheticConfig& cfg);

struct LinearModel {
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> training_log;  // loss at the start of each epoch
};

inline constexpr double kDefaultLearningRate = 0.05;
inline constexpr int kDefaultEpochs = 500;

double Sigmoid(double z);

// Mean binary cross-entropy of sigmoid(w.x + b) against label (fake = 1),
// evaluated on the probabilities; +inf when a sample's probability
// saturates to exactly 0 or 1 on the wrong side.
double BceLoss(const LinearModel& model, const EmbeddingTable& table);

// Analytic gradient of BceLoss: d weights followed by the bias.
std::vector<double> BceGradient(const LinearModel& model,
                                const EmbeddingTable& table);

// Full-batch gradient descent from zero parameters. Records run in table
// order. `seed` is recorded for provenance only; training is deterministic.
// Throws EmptyClass, InvalidConfig, DivergenceDetected.
LinearModel TrainLinear(const EmbeddingTable& table, int epochs, double lr,
                        uint64_t seed);

// sigmoid(w.x + b) per record. Throws DimensionMismatch.
ScoreTable PredictScores(const LinearModel& model, const EmbeddingTable& table);

struct GradCheckResult {
  double max_relative_error = 0.0;
  std::vector<double> analytic;
  std::vector<double> numeric;
};

// Central differences per parameter; relative error of a coordinate is
// |a - n| / max(|a|, |n|, 1e-8). Throws InvalidConfig for epsilon <= 0 and
// EmptyInput for an empty table.
GradCheckResult GradCheck(const LinearModel& model, const EmbeddingTable& table,
                          double epsilon = 1e-5);

}  // namespace nccoreset

#endif  // NCCORESET_CORE_TOY_MODEL_H_
