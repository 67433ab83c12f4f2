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


#include <cmath>
#include <fstream>
#include <random>

#include "core/eval_metrics.h"
#include "doctest.h"
#include "json.hpp"
#include "oracles.h"
#include "test_util.h"

using namespace nccoreset;
using testutil::MakeScores;
using testutil::ToOracle;

TEST_CASE("perfect and anti-perfect separation") {
  const auto perfect = MakeScores({0.9, 0.8, 0.7}, {0.3, 0.2});
  CHECK(EerRoc(perfect) == 0.0);
  CHECK(ComputeRocCurve(perfect).auc == 1.0);
  CHECK(MeanAveragePrecision(perfect) == 1.0);

  const auto anti = MakeScores({0.1, 0.2}, {0.8, 0.9, 0.7});
  CHECK(EerRoc(anti) == 1.0);
  CHECK(ComputeRocCurve(anti).auc == 0.0);
}

TEST_CASE("single tie goes straight from (0,0) to (1,1)") {
  const auto t = MakeScores({0.8}, {0.8});
  const RocCurve c = ComputeRocCurve(t);
  REQUIRE(c.points.size() == 2);
  CHECK(c.points[0].fpr == 0.0);
  CHECK(c.points[0].tpr == 0.0);
  CHECK(c.points[1].fpr == 1.0);
  CHECK(c.points[1].tpr == 1.0);
  CHECK(c.auc == 0.5);
  CHECK(EerRoc(t) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("four-sample table: polyline crossing") {
  // Vertices (0,0) (0,.5) (.5,.5) (.5,1) (1,1); FPR = FNR = 0.5 is hit
  // exactly at the third vertex. 1 - AUC is 0.25 for the same table, which
  // is a different quantity.
  const auto t = MakeScores({0.9, 0.4}, {0.6, 0.1});
  const double oracle_eer = oracle::Eer(ToOracle(t));
  CHECK(oracle_eer == 0.5);
  CHECK(EerRoc(t) == oracle_eer);
  CHECK(1.0 - ComputeRocCurve(t).auc == doctest::Approx(0.25));
}

TEST_CASE("two-sample mAP hand enumeration") {
  const auto t = MakeScores({0.1}, {0.9});
  CHECK(AveragePrecision(t, Label::kFake) == 0.5);
  CHECK(AveragePrecision(t, Label::kReal) == 0.5);
  CHECK(MeanAveragePrecision(t) == 0.5);
}

TEST_CASE("single-class tables are rejected") {
  const auto only_real = MakeScores({}, {0.1, 0.4});
  CHECK_NC_ERROR(EerRoc(only_real), ErrorCode::kSingleClassOnly);
  CHECK_NC_ERROR(ComputeRocCurve(only_real), ErrorCode::kSingleClassOnly);
  CHECK_NC_ERROR(MeanAveragePrecision(only_real),
                 ErrorCode::kSingleClassOnly);
  CHECK_NC_ERROR(Evaluate(ScoreTable{}), ErrorCode::kSingleClassOnly);
}

TEST_CASE("curve shape invariants") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const auto t = testutil::RandomScores(gen, 2 + trial * 7, trial % 3 * 5);
    for (Label positive : kLabels) {
      const RocCurve c = ComputeRocCurve(t, positive);
      const double sign = positive == Label::kFake ? 1.0 : -1.0;
      CHECK(c.points.front().fpr == 0.0);
      CHECK(c.points.front().tpr == 0.0);
      CHECK(c.points.back().fpr == 1.0);
      CHECK(c.points.back().tpr == 1.0);
      double area = 0;
      for (size_t i = 1; i < c.points.size(); ++i) {
        CHECK(c.points[i].fpr >= c.points[i - 1].fpr);
        CHECK(c.points[i].tpr >= c.points[i - 1].tpr);
        CHECK(sign * c.points[i].threshold < sign * c.points[i - 1].threshold);
        area += (c.points[i].fpr - c.points[i - 1].fpr) *
                (c.points[i].tpr + c.points[i - 1].tpr) / 2;
      }
      CHECK(c.auc == doctest::Approx(area).epsilon(1e-12));
    }
  }
}

TEST_CASE("real-positive curve mirrors the fake-positive one") {
  std::mt19937_64 gen(5);
  const auto t = testutil::RandomScores(gen, 300, 10);
  const double fake_auc = ComputeRocCurve(t, Label::kFake).auc;
  const double real_auc = ComputeRocCurve(t, Label::kReal).auc;
  CHECK(fake_auc == doctest::Approx(real_auc).epsilon(1e-12));
}

TEST_CASE("random tables match the brute-force oracles") {
  std::mt19937_64 gen(2026);
  std::uniform_int_distribution<size_t> size(2, 400);
  for (int trial = 0; trial < 60; ++trial) {
    const auto t = testutil::RandomScores(gen, size(gen), trial % 4 * 4);
    const auto rows = ToOracle(t);
    const Metrics m = Evaluate(t);
    CHECK(m.eer_roc == doctest::Approx(oracle::Eer(rows)).epsilon(1e-9));
    CHECK(m.map ==
          doctest::Approx(oracle::MeanAveragePrecision(rows)).epsilon(1e-9));
    CHECK(m.auc ==
          doctest::Approx(oracle::MannWhitneyAuc(rows)).epsilon(1e-9));
    CHECK(m.map > 0.0);
    CHECK(m.map <= 1.0);
    CHECK(m.n_real + m.n_fake == t.size());
  }
}

TEST_CASE("monotone transforms leave EER and mAP bit-identical") {
  std::mt19937_64 gen(99);
  for (int trial = 0; trial < 30; ++trial) {
    const auto t = testutil::RandomScores(gen, 50 + trial, trial % 2 * 8);
    ScoreTable warped;
    for (const auto& r : t.rows())
      warped.Add({r.sample_id, r.label, std::exp(3.0 * r.score) - 7.0});
    CHECK(EerRoc(warped) == EerRoc(t));
    CHECK(MeanAveragePrecision(warped) == MeanAveragePrecision(t));
  }
}

TEST_CASE("negating scores and swapping labels keeps the EER") {
  std::mt19937_64 gen(7);
  for (int trial = 0; trial < 30; ++trial) {
    const auto t = testutil::RandomScores(gen, 40 + 3 * trial, trial % 3 * 6);
    ScoreTable flipped;
    for (const auto& r : t.rows())
      flipped.Add({r.sample_id,
                   r.label == Label::kFake ? Label::kReal : Label::kFake,
                   -r.score});
    CHECK(EerRoc(flipped) == doctest::Approx(EerRoc(t)).epsilon(1e-12));
  }
}

TEST_CASE("reference values computed with scikit-learn") {
  std::ifstream in(std::string(NC_FIXTURE_DIR) + "/oracle_metrics.json");
  REQUIRE(in.good());
  const auto cases = nlohmann::json::parse(in);
  REQUIRE(cases.size() == 4);
  for (const auto& c : cases) {
    ScoreTable t;
    for (size_t i = 0; i < c["score"].size(); ++i)
      t.Add({c["sample_id"][i].get<std::string>(),
             c["fake"][i].get<int>() ? Label::kFake : Label::kReal,
             c["score"][i].get<double>()});
    const Metrics m = Evaluate(t);
    CHECK(m.auc == doctest::Approx(c["auc"].get<double>()).epsilon(1e-9));
    CHECK(m.eer_roc ==
          doctest::Approx(c["eer_roc"].get<double>()).epsilon(1e-9));
    CHECK(m.map == doctest::Approx(c["map"].get<double>()).epsilon(1e-9));
  }
}
