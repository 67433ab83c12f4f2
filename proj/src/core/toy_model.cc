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

#include "core/toy_model.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "core/error.h"
#include "core/rng.h"

namespace nccoreset {

namespace {

double Logit(const LinearModel& model, const std::vector<float>& x) {
  double z = model.bias;
  for (size_t j = 0; j < x.size(); ++j) z += model.weights[j] * x[j];
  return z;
}

void CheckDimension(const LinearModel& model, const EmbeddingTable& table) {
  if (model.weights.size() != table.dimension())
    Fail(ErrorCode::kDimensionMismatch,
         "model has " + std::to_string(model.weights.size()) +
             " weights, table dimension is " +
             std::to_string(table.dimension()));
}

std::string SampleName(const char* prefix, size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s-%06zu", prefix, i);
  return buf;
}

}  // namespace

void SyntheticConfig::Validate() const {
  if (dimension == 0) Fail(ErrorCode::kInvalidConfig, "dimension must be >= 1");
  if (n_real == 0 || n_fake == 0)
    Fail(ErrorCode::kInvalidConfig, "n_real and n_fake must be positive");
  if (fake_modes == 0)
    Fail(ErrorCode::kInvalidConfig, "fake_modes must be >= 1");
  if (fake_modes > dimension)
    Fail(ErrorCode::kInvalidConfig,
         "fake_modes (" + std::to_string(fake_modes) +
             ") cannot exceed dimension (" + std::to_string(dimension) + ")");
  if (!(within_std > 0.0) || !std::isfinite(within_std))
    Fail(ErrorCode::kInvalidConfig, "within_std must be positive");
  if (!(mode_separation >= 0.0) || !std::isfinite(mode_separation))
    Fail(ErrorCode::kInvalidConfig, "mode_separation must be >= 0");
}

EmbeddingTable GenerateSynthetic(const SyntheticConfig& cfg) {
  cfg.Validate();
  Rng rng(cfg.seed);
  std::vector<uint32_t> axis(cfg.dimension);
  std::iota(axis.begin(), axis.end(), 0u);
  for (uint32_t i = 0; i + 1 < cfg.dimension; ++i)
    std::swap(axis[i], axis[i + rng.UniformIndex(cfg.dimension - i)]);

  EmbeddingTable table(cfg.dimension);
  table.Reserve(cfg.n_real + cfg.n_fake);
  auto draw = [&](uint32_t mode_axis, bool shifted) {
    std::vector<float> x(cfg.dimension);
    for (uint32_t j = 0; j < cfg.dimension; ++j) {
      double v = 1.0 + cfg.within_std * rng.Gaussian();
      if (shifted && j == mode_axis) v += cfg.mode_separation;
      x[j] = static_cast<float>(v);
    }
    return x;
  };
  for (size_t i = 0; i < cfg.n_real; ++i)
    table.Add({SampleName("real", i), Label::kReal, 0, draw(0, false)});
  for (size_t i = 0; i < cfg.n_fake; ++i) {
    const auto mode = static_cast<uint32_t>(i % cfg.fake_modes);
    table.Add({SampleName("fake", i), Label::kFake,
               static_cast<uint16_t>(mode + 1), draw(axis[mode], true)});
  }
  return table;
}

double Sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double BceLoss(const LinearModel& model, const EmbeddingTable& table) {
  CheckDimension(model, table);
  double sum = 0.0;
  for (const auto& r : table.records()) {
    const double p = Sigmoid(Logit(model, r.embedding));
    sum -= r.label == Label::kFake ? std::log(p) : std::log(1.0 - p);
  }
  return sum / static_cast<double>(table.size());
}

std::vector<double> BceGradient(const LinearModel& model,
                                const EmbeddingTable& table) {
  CheckDimension(model, table);
  const size_t d = table.dimension();
  std::vector<double> grad(d + 1, 0.0);
  for (const auto& r : table.records()) {
    const double y = r.label == Label::kFake ? 1.0 : 0.0;
    const double residual = Sigmoid(Logit(model, r.embedding)) - y;
    for (size_t j = 0; j < d; ++j) grad[j] += residual * r.embedding[j];
    grad[d] += residual;
  }
  for (double& g : grad) g /= static_cast<double>(table.size());
  return grad;
}

LinearModel TrainLinear(const EmbeddingTable& table, int epochs, double lr,
                        uint64_t /*seed*/) {
  if (table.Count(Label::kReal) == 0 || table.Count(Label::kFake) == 0)
    Fail(ErrorCode::kEmptyClass, "training needs both classes");
  if (!(lr > 0.0) || !std::isfinite(lr))
    Fail(ErrorCode::kInvalidConfig, "learning rate must be positive");
  if (epochs < 1) Fail(ErrorCode::kInvalidConfig, "epochs must be >= 1");

  const size_t d = table.dimension();
  LinearModel model;
  model.weights.assign(d, 0.0);
  model.training_log.reserve(static_cast<size_t>(epochs));
  for (int epoch = 0; epoch < epochs; ++epoch) {
    const double loss = BceLoss(model, table);
    if (!std::isfinite(loss))
      Fail(ErrorCode::kDivergenceDetected,
           "loss became non-finite at epoch " + std::to_string(epoch));
    model.training_log.push_back(loss);
    const auto grad = BceGradient(model, table);
    for (size_t j = 0; j < d; ++j) model.weights[j] -= lr * grad[j];
    model.bias -= lr * grad[d];
  }
  for (double w : model.weights)
    if (!std::isfinite(w))
      Fail(ErrorCode::kDivergenceDetected, "weights became non-finite");
  if (!std::isfinite(model.bias) || !std::isfinite(BceLoss(model, table)))
    Fail(ErrorCode::kDivergenceDetected, "loss became non-finite");
  return model;
}

ScoreTable PredictScores(const LinearModel& model,
                         const EmbeddingTable& table) {
  CheckDimension(model, table);
  ScoreTable scores;
  for (const auto& r : table.records())
    scores.Add({r.sample_id, r.label, Sigmoid(Logit(model, r.embedding))});
  return scores;
}

GradCheckResult GradCheck(const LinearModel& model, const EmbeddingTable& table,
                          double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon))
    Fail(ErrorCode::kInvalidConfig, "epsilon must be positive");
  if (table.empty()) Fail(ErrorCode::kEmptyInput, "gradient check needs data");
  GradCheckResult result;
  result.analytic = BceGradient(model, table);
  const size_t d = model.weights.size();
  result.numeric.resize(d + 1);
  LinearModel probe = model;
  for (size_t j = 0; j <= d; ++j) {
    double& param = j < d ? probe.weights[j] : probe.bias;
    const double saved = param;
    param = saved + epsilon;
    const double up = BceLoss(probe, table);
    param = saved - epsilon;
    const double down = BceLoss(probe, table);
    param = saved;
    result.numeric[j] = (up - down) / (2.0 * epsilon);
    const double a = result.analytic[j], n = result.numeric[j];
    const double scale = std::max({std::abs(a), std::abs(n), 1e-8});
    result.max_relative_error =
        std::max(result.max_relative_error, std::abs(a - n) / scale);
  }
  return result;
}

}  // namespace nccoreset
