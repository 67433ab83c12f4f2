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

#include "core/eval_metrics.h"

#include <algorithm>
#include <limits>
#include <numeric>

#include "core/error.h"

namespace nccoreset {

namespace {

void RequireBothClasses(const ScoreTable& scores) {
  if (scores.Count(Label::kReal) == 0 || scores.Count(Label::kFake) == 0)
    Fail(ErrorCode::kSingleClassOnly,
         "metrics need at least one real and one fake score");
}

}  // namespace

RocCurve ComputeRocCurve(const ScoreTable& scores, Label positive) {
  RequireBothClasses(scores);
  const auto& rows = scores.rows();
  const double sign = positive == Label::kFake ? 1.0 : -1.0;
  std::vector<size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return sign * rows[a].score > sign * rows[b].score;
  });

  const double n_pos = static_cast<double>(scores.Count(positive));
  const double n_neg = static_cast<double>(rows.size()) - n_pos;
  RocCurve curve;
  curve.points.push_back(
      {0.0, 0.0, sign * std::numeric_limits<double>::infinity()});
  size_t tp = 0, fp = 0;
  for (size_t i = 0; i < order.size();) {
    const double s = sign * rows[order[i]].score;
    size_t j = i;
    while (j < order.size() && sign * rows[order[j]].score == s) {
      if (rows[order[j]].label == positive)
        ++tp;
      else
        ++fp;
      ++j;
    }
    curve.points.push_back({static_cast<double>(fp) / n_neg,
                            static_cast<double>(tp) / n_pos,
                            rows[order[i]].score});
    i = j;
  }
  double area = 0.0;
  for (size_t i = 1; i < curve.points.size(); ++i) {
    const auto& a = curve.points[i - 1];
    const auto& b = curve.points[i];
    area += (b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0;
  }
  curve.auc = area;
  return curve;
}

double EerFromCurve(const RocCurve& curve) {
  const auto& p = curve.points;
  // f = FPR - FNR runs from -1 at (0,0) to +1 at (1,1).
  auto f = [](const RocPoint& q) { return q.fpr - (1.0 - q.tpr); };
  for (size_t i = 1; i < p.size(); ++i) {
    const double f_hi = f(p[i]);
    if (f_hi < 0.0) continue;
    if (f_hi == 0.0) return p[i].fpr;
    const double f_lo = f(p[i - 1]);
    const double t = -f_lo / (f_hi - f_lo);
    return p[i - 1].fpr + t * (p[i].fpr - p[i - 1].fpr);
  }
  return 1.0;
}

double EerRoc(const ScoreTable& scores) {
  return EerFromCurve(ComputeRocCurve(scores, Label::kFake));
}

double AveragePrecision(const ScoreTable& scores, Label positive) {
  RequireBothClasses(scores);
  const auto& rows = scores.rows();
  std::vector<size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (rows[a].score != rows[b].score)
      return positive == Label::kFake ? rows[a].score > rows[b].score
                                      : rows[a].score < rows[b].score;
    return rows[a].sample_id < rows[b].sample_id;
  });
  const double n_pos = static_cast<double>(scores.Count(positive));
  double ap = 0.0;
  size_t hits = 0;
  for (size_t rank = 0; rank < order.size(); ++rank) {
    if (rows[order[rank]].label != positive) continue;
    ++hits;
    // Recall steps by 1/n_pos at each hit.
    ap += static_cast<double>(hits) / static_cast<double>(rank + 1);
  }
  return ap / n_pos;
}

double MeanAveragePrecision(const ScoreTable& scores) {
  return (AveragePrecision(scores, Label::kReal) +
          AveragePrecision(scores, Label::kFake)) /
         2.0;
}

Metrics Evaluate(const ScoreTable& scores) {
  Metrics m;
  const RocCurve curve = ComputeRocCurve(scores, Label::kFake);
  m.eer_roc = EerFromCurve(curve);
  m.auc = curve.auc;
  m.map = MeanAveragePrecision(scores);
  m.n_real = scores.Count(Label::kReal);
  m.n_fake = scores.Count(Label::kFake);
  return m;
}

}  // namespace nccoreset
