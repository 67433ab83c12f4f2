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

#ifndef NCCORESET_CORE_PROJECTION_H_
#define NCCORESET_CORE_PROJECTION_H_

#include <string>
#include <vector>

#include "core/embedding_io.h"

namespace nccoreset {

// Deterministic 2-D PCA view of a table for eyeballing class separation.
struct Projection {
  std::vector<double> mean;
  // Top-2 eigenvectors of the covariance, each signed so that its
  // largest-magnitude component (first on ties) is positive. A 1-D table
  // gets a zero second axis.
  std::vector<double> axis1;
  std::vector<double> axis2;
  std::vector<double> pc1;
  std::vector<double> pc2;
};

// Throws EmptyInput.
Projection ProjectPca(const EmbeddingTable& table);

// Header `sample_id,label,pc1,pc2`, rows in table order.
std::string FormatProjectionCsv(const EmbeddingTable& table,
                                const Projection& projection);

}  // namespace nccoreset

#endif  // NCCORESET_CORE_PROJECTION_H_
