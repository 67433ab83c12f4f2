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

#include "core/projection.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "core/error.h"

namespace nccoreset {

namespace {

std::vector<double> SignedAxis(const Eigen::VectorXd& v) {
  Eigen::Index best = 0;
  for (Eigen::Index j = 1; j < v.size(); ++j)
    if (std::abs(v[j]) > std::abs(v[best])) best = j;
  const double sign = v[best] < 0.0 ? -1.0 : 1.0;
  std::vector<double> out(v.size());
  for (Eigen::Index j = 0; j < v.size(); ++j) out[j] = sign * v[j];
  return out;
}

}  // namespace

Projection ProjectPca(const EmbeddingTable& table) {
  if (table.empty()) Fail(ErrorCode::kEmptyInput, "cannot project 0 records");
  const Eigen::Index n = static_cast<Eigen::Index>(table.size());
  const Eigen::Index d = table.dimension();
  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < d; ++j) x(i, j) = table[i].embedding[j];

  Projection p;
  const Eigen::RowVectorXd mean = x.colwise().mean();
  x.rowwise() -= mean;
  p.mean.assign(mean.data(), mean.data() + d);

  // Eigenvectors come back with ascending eigenvalues. With fewer records
  // than dimensions the n x n Gram matrix shares the non-zero spectrum of
  // the covariance and keeps memory at O(n^2) for wide feature tables.
  Eigen::MatrixXd top(d, std::min<Eigen::Index>(d, 2));
  if (n < d) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(x * x.transpose());
    const double floor = 1e-12 * std::max(solver.eigenvalues()[n - 1], 0.0);
    for (Eigen::Index c = 0; c < top.cols(); ++c) {
      const Eigen::Index col = n - 1 - c;
      Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
      if (col >= 0 && solver.eigenvalues()[col] > floor) {
        v = x.transpose() * solver.eigenvectors().col(col);
        v.normalize();
      }
      top.col(c) = v;
    }
  } else {
    const Eigen::MatrixXd cov = x.transpose() * x;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    for (Eigen::Index c = 0; c < top.cols(); ++c)
      top.col(c) = solver.eigenvectors().col(d - 1 - c);
  }
  p.axis1 = SignedAxis(top.col(0));
  p.axis2 = d >= 2 ? SignedAxis(top.col(1)) : std::vector<double>(d, 0.0);

  const Eigen::Map<const Eigen::VectorXd> a1(p.axis1.data(), d);
  const Eigen::Map<const Eigen::VectorXd> a2(p.axis2.data(), d);
  const Eigen::VectorXd c1 = x * a1;
  const Eigen::VectorXd c2 = x * a2;
  p.pc1.assign(c1.data(), c1.data() + n);
  p.pc2.assign(c2.data(), c2.data() + n);
  return p;
}

std::string FormatProjectionCsv(const EmbeddingTable& table,
                                const Projection& projection) {
  std::string out = "sample_id,label,pc1,pc2\n";
  for (size_t i = 0; i < table.size(); ++i) {
    out += table[i].sample_id;
    out += ',';
    out += LabelToken(table[i].label);
    out += ',';
    out += FormatDouble(projection.pc1[i]);
    out += ',';
    out += FormatDouble(projection.pc2[i]);
    out += '\n';
  }
  return out;
}

}  // namespace nccoreset
