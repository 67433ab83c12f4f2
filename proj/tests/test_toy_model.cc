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
#include <map>
#include <random>
#include <set>

#include "core/collapse.h"
#include "core/kmeans.h"
#include "core/toy_model.h"
#include "doctest.h"
#include "test_util.h"

using namespace nccoreset;

namespace {

SyntheticConfig Small(uint64_t seed = 7) {
  SyntheticConfig cfg;
  cfg.dimension = 4;
  cfg.n_real = 30;
  cfg.n_fake = 40;
  cfg.fake_modes = 3;
  cfg.mode_separation = 2.0;
  cfg.seed = seed;
  return cfg;
}

double Accuracy(const LinearModel& m, const EmbeddingTable& t) {
  const ScoreTable s = PredictScores(m, t);
  size_t ok = 0;
  for (size_t i = 0; i < t.size(); ++i)
    ok += (s.rows()[i].score >= 0.5) == (t[i].label == Label::kFake);
  return double(ok) / t.size();
}

}  // namespace

TEST_CASE("synthetic generator is deterministic and well formed") {
  const SyntheticConfig cfg = Small();
  const EmbeddingTable a = GenerateSynthetic(cfg), b = GenerateSynthetic(cfg);
  CHECK(EncodeTable(a) == EncodeTable(b));
  SyntheticConfig other = cfg;
  other.seed = 8;
  CHECK(EncodeTable(GenerateSynthetic(other)) != EncodeTable(a));

  REQUIRE(a.size() == 70);
  CHECK(a.Count(Label::kReal) == 30);
  std::map<uint32_t, size_t> per_mode;
  for (size_t i = 30; i < 70; ++i) {
    CHECK(a[i].label == Label::kFake);
    ++per_mode[a[i].algorithm_id];
  }
  CHECK(per_mode == std::map<uint32_t, size_t>{{1, 14}, {2, 13}, {3, 13}});
}

TEST_CASE("mode centres sit at the requested distance from the anchor") {
  SyntheticConfig cfg;
  cfg.dimension = 8;
  cfg.n_real = 4000;
  cfg.n_fake = 4 * 4000;
  cfg.fake_modes = 4;
  cfg.mode_separation = 5.0;
  const EmbeddingTable t = GenerateSynthetic(cfg);
  std::vector<std::vector<double>> means(5, std::vector<double>(8, 0.0));
  std::vector<size_t> n(5, 0);
  for (const auto& r : t.records()) {
    const size_t m = r.label == Label::kReal ? 0 : r.algorithm_id;
    ++n[m];
    for (size_t j = 0; j < 8; ++j) means[m][j] += r.embedding[j];
  }
  for (size_t m = 0; m < 5; ++m)
    for (double& v : means[m]) v /= n[m];
  for (double v : means[0]) CHECK(v == doctest::Approx(1.0).epsilon(0.1));
  for (size_t m = 1; m < 5; ++m)
    CHECK(EuclideanDistance(std::span<const double>(means[m]),
                            std::span<const double>(means[0])) ==
          doctest::Approx(5.0).epsilon(0.03));
}

TEST_CASE("generator configuration errors") {
  auto bad = [](auto edit) {
    SyntheticConfig c = Small();
    edit(c);
    CHECK_NC_ERROR(GenerateSynthetic(c), ErrorCode::kInvalidConfig);
  };
  bad([](SyntheticConfig& c) { c.dimension = 0; });
  bad([](SyntheticConfig& c) { c.n_real = 0; });
  bad([](SyntheticConfig& c) { c.n_fake = 0; });
  bad([](SyntheticConfig& c) { c.fake_modes = 0; });
  bad([](SyntheticConfig& c) { c.fake_modes = 5; });
  bad([](SyntheticConfig& c) { c.within_std = 0; });
  bad([](SyntheticConfig& c) { c.mode_separation = -1; });
  bad([](SyntheticConfig& c) { c.within_std = NAN; });
}

TEST_CASE("collapsed generator output is flagged as degenerate") {
  SyntheticConfig c = Small();
  c.fake_modes = 1;
  c.mode_separation = 0.0;
  c.within_std = 1e-300;
  CHECK_NC_ERROR(ComputeGeometry(GenerateSynthetic(c)),
                 ErrorCode::kDegenerateGeometry);
}

TEST_CASE("well separated modes are recovered by select_k") {
  SyntheticConfig cfg;
  cfg.n_fake = 1400;
  cfg.n_real = 100;
  cfg.mode_separation = 40.0;
  const EmbeddingTable t = GenerateSynthetic(cfg);
  PointSet fakes(cfg.dimension);
  std::vector<uint32_t> alg;
  for (const auto& r : t.records())
    if (r.label == Label::kFake) {
      fakes.AddConverted(std::span<const float>(r.embedding));
      alg.push_back(r.algorithm_id);
    }
  const SelectKResult res = SelectK(fakes, 10, 5);
  CHECK(res.clustering.k == 7);
  CHECK(res.report.overlap_score == 0.0);
  // Each cluster is exactly one mode.
  std::map<size_t, std::set<uint32_t>> modes;
  for (size_t i = 0; i < alg.size(); ++i)
    modes[res.clustering.assignments[i]].insert(alg[i]);
  CHECK(modes.size() == 7);
  for (const auto& [cluster, ids] : modes) CHECK(ids.size() == 1);
}

TEST_CASE("initial loss and trivial predictions") {
  std::mt19937_64 gen3(3);
  const EmbeddingTable t = testutil::RandomTable(gen3, 5, 20, 20);
  LinearModel zero;
  zero.weights.assign(5, 0.0);
  CHECK(BceLoss(zero, t) == doctest::Approx(std::log(2.0)).epsilon(1e-15));
  const LinearModel trained = TrainLinear(t, 1, 0.1, 0);
  REQUIRE(trained.training_log.size() == 1);
  CHECK(trained.training_log[0] == doctest::Approx(0.693147).epsilon(1e-6));

  for (const auto& s : PredictScores(zero, t).rows()) CHECK(s.score == 0.5);

  LinearModel wrong_dim;
  wrong_dim.weights.assign(4, 0.0);
  CHECK_NC_ERROR(PredictScores(wrong_dim, t), ErrorCode::kDimensionMismatch);
}

TEST_CASE("sigmoid symmetry and monotonicity") {
  std::mt19937_64 gen(11);
  std::normal_distribution<double> n(0, 1);
  EmbeddingTable pos(3), neg(3);
  LinearModel w, minus_w;
  for (int j = 0; j < 3; ++j) {
    w.weights.push_back(n(gen));
    minus_w.weights.push_back(-w.weights.back());
  }
  for (int i = 0; i < 50; ++i) {
    std::vector<float> x(3), mx(3);
    for (int j = 0; j < 3; ++j) {
      x[j] = static_cast<float>(n(gen));
      mx[j] = -x[j];
    }
    pos.Add(testutil::Record(testutil::Id("p", i), Label::kFake, x, 1));
    neg.Add(testutil::Record(testutil::Id("p", i), Label::kFake, mx, 1));
  }
  // Negating one of w or x complements the score; negating both is a no-op.
  const ScoreTable a = PredictScores(w, pos), b = PredictScores(w, neg),
                   c = PredictScores(minus_w, pos),
                   d = PredictScores(minus_w, neg);
  for (size_t i = 0; i < a.size(); ++i) {
    CHECK(a.rows()[i].score + b.rows()[i].score ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(a.rows()[i].score + c.rows()[i].score ==
          doctest::Approx(1.0).epsilon(1e-15));
    CHECK(a.rows()[i].score == doctest::Approx(d.rows()[i].score).epsilon(1e-15));
  }

  double prev = 0.0;
  for (double z = -30; z <= 30; z += 0.25) {
    CHECK(Sigmoid(z) > prev);
    prev = Sigmoid(z);
  }
  CHECK(Sigmoid(0) == 0.5);
  CHECK(Sigmoid(-800) >= 0.0);
  CHECK(Sigmoid(800) <= 1.0);
}

TEST_CASE("training is deterministic and validates inputs") {
  const EmbeddingTable t = GenerateSynthetic(Small());
  const LinearModel a = TrainLinear(t, 50, 0.05, 1);
  const LinearModel b = TrainLinear(t, 50, 0.05, 99);
  CHECK(a.weights == b.weights);
  CHECK(a.bias == b.bias);
  CHECK(a.training_log == b.training_log);

  CHECK_NC_ERROR(TrainLinear(t, 50, 0.0, 0), ErrorCode::kInvalidConfig);
  CHECK_NC_ERROR(TrainLinear(t, 50, -1.0, 0), ErrorCode::kInvalidConfig);
  CHECK_NC_ERROR(TrainLinear(t, 0, 0.1, 0), ErrorCode::kInvalidConfig);
  EmbeddingTable only_fake(4);
  for (const auto& r : t.records())
    if (r.label == Label::kFake) only_fake.Add(r);
  CHECK_NC_ERROR(TrainLinear(only_fake, 5, 0.1, 0), ErrorCode::kEmptyClass);
}

TEST_CASE("separable data is fitted exactly") {
  // Oracle: the classes are split by the hyperplane x0 = 0 with margin 1.
  std::mt19937_64 gen(12);
  std::uniform_real_distribution<double> u(-3, 3), gap(1, 4);
  EmbeddingTable t(3);
  for (int i = 0; i < 100; ++i) {
    const bool fake = i % 2;
    std::vector<float> x = {static_cast<float>(fake ? gap(gen) : -gap(gen)),
                            static_cast<float>(u(gen)),
                            static_cast<float>(u(gen))};
    t.Add(testutil::Record(testutil::Id("s", i),
                              fake ? Label::kFake : Label::kReal, x, fake));
  }
  const LinearModel m = TrainLinear(t, 500, 0.5, 0);
  CHECK(Accuracy(m, t) == 1.0);
  for (size_t e = 1; e < m.training_log.size(); ++e)
    CHECK(m.training_log[e] <= m.training_log[e - 1]);
}

TEST_CASE("loss never increases at the default step on the default config") {
  const EmbeddingTable t = GenerateSynthetic(SyntheticConfig{});
  const LinearModel m = TrainLinear(t, kDefaultEpochs, kDefaultLearningRate, 0);
  REQUIRE(m.training_log.size() == size_t(kDefaultEpochs));
  for (size_t e = 1; e < m.training_log.size(); ++e)
    CHECK(m.training_log[e] <= m.training_log[e - 1]);
  CHECK(m.training_log.back() < m.training_log.front());
}

TEST_CASE("huge learning rate diverges") {
  CHECK_NC_ERROR(TrainLinear(GenerateSynthetic(Small()), 200, 1e6, 0),
                 ErrorCode::kDivergenceDetected);
}

TEST_CASE("gradient check") {
  std::mt19937_64 gen(13);
  std::normal_distribution<double> n(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const size_t dim = 1 + trial % 6;
    const EmbeddingTable t = testutil::RandomTable(gen, dim, 5 + trial, 7 + trial, 1);
    LinearModel m;
    for (size_t j = 0; j < dim; ++j) m.weights.push_back(0.5 * n(gen));
    m.bias = 0.3 * n(gen);
    const GradCheckResult r = GradCheck(m, t);
    CHECK(r.max_relative_error < 1e-4);
    CHECK(r.analytic.size() == dim + 1);
  }

  // Symmetric data at the zero model: both gradients vanish.
  EmbeddingTable sym(2);
  sym.Add(testutil::Record("a", Label::kFake, {1.0f, 2.0f}, 1));
  sym.Add(testutil::Record("b", Label::kReal, {1.0f, 2.0f}, 0));
  sym.Add(testutil::Record("c", Label::kFake, {-1.0f, -2.0f}, 1));
  sym.Add(testutil::Record("d", Label::kReal, {-1.0f, -2.0f}, 0));
  LinearModel zero;
  zero.weights.assign(2, 0.0);
  const GradCheckResult z = GradCheck(zero, sym);
  for (double v : z.analytic) CHECK(std::abs(v) < 1e-8);
  for (double v : z.numeric) CHECK(std::abs(v) < 1e-8);

  CHECK_NC_ERROR(GradCheck(zero, sym, 0.0), ErrorCode::kInvalidConfig);
  CHECK_NC_ERROR(GradCheck(zero, EmbeddingTable(2)), ErrorCode::kEmptyInput);
}

TEST_CASE("perfect model keeps the whole table as samples of interest") {
  const EmbeddingTable t = GenerateSynthetic(Small());
  const ScoreTable s = PredictScores(TrainLinear(t, 300, 0.05, 0), t);
  ScoreTable perfect;
  for (const auto& r : t.records())
    perfect.Add({r.sample_id, r.label, r.label == Label::kFake ? 0.9 : 0.1});
  CHECK(SamplesOfInterest(t, perfect).size() == t.size());
  CHECK(s.size() == t.size());
}
