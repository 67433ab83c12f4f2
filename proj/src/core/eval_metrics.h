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

#ifndef NCCORESET_CORE_EVAL_METRICS_H_
#define NCCORESET_CORE_EVAL_METRICS_H_

#include <vector>

#include "core/embedding_io.h"

namespace nccoreset {

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
  // In score units: score >= threshold is called positive, or
  // score <= threshold when the positive class is Real.
  double threshold = 0.0;
};

struct RocCurve {
  std::vector<RocPoint> points;  // (0,0) first, (1,1) last
  double auc = 0.0;
};

// Thresholds sweep the distinct scores in descending order; equal scores
// enter together. For positive == Real the scores are negated. Throws
// SingleClassOnly.
RocCurve ComputeRocCurve(const ScoreTable& scores,
                         Label positive = Label::kFake);

/**
   EER on the ROC polyline: the point where FPR equals FNR = 1 - TPR.
   Walks the curve to the first segment on which FPR - FNR turns
   non-negative and interpolates linearly inside it. Depends only on the
   ROC vertices, so any strictly increasing transform of the scores leaves
   the result bit-identical.
 */
double EerRoc(const ScoreTable& scores);
double EerFromCurve(const RocCurve& curve);

// Average precision of one class: rank by descending score (ascending when
// the positive class is Real), ties by sample_id ascending, and sum
// precision at each positive hit divided by the positive count.
double AveragePrecision(const ScoreTable& scores, Label positive);

// (AP_real + AP_fake) / 2. Throws SingleClassOnly.
double MeanAveragePrecision(const ScoreTable& scores);

struct Metrics {
  double eer_roc = 0.0;
  double map = 0.0;
  double auc = 0.0;
  size_t n_real = 0;
  size_t n_fake = 0;
};

Metrics Evaluate(const ScoreTable& scores);

}  // namespace nccoreset

#endif  // NCCORESET_CORE_EVAL_METRICS_H_
