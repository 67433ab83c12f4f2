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


// Drives the nc-coreset executable as a subprocess.

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Scratch {
  Scratch() {
    static int n = 0;
    path = fs::temp_directory_path() / ("nccoreset-cli-" + std::to_string(::getpid()) +
                                        "-" + std::to_string(n++));
    fs::create_directories(path);
  }
  ~Scratch() { fs::remove_all(path); }
  std::string operator/(const std::string& f) const { return (path / f).string(); }
  fs::path path;
};

struct Result {
  int exit_code = -1;
  std::string out;
  std::string err;
};

Result Run(const std::string& args, const std::string& env = "") {
  static int n = 0;
  const fs::path base = fs::temp_directory_path() /
                        ("nccoreset-cli-io-" + std::to_string(::getpid()) + "-" +
                         std::to_string(n++));
  const std::string cmd = env + (env.empty() ? "" : " ") + "'" NC_CLI_PATH "' " +
                          args + " > '" + base.string() + ".out' 2> '" +
                          base.string() + ".err'";
  const int raw = std::system(cmd.c_str());
  Result r;
  r.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  r.out = Slurp(base.string() + ".out");
  r.err = Slurp(base.string() + ".err");
  fs::remove(base.string() + ".out");
  fs::remove(base.string() + ".err");
  return r;
}

std::string Fixture(const std::string& name) {
  return std::string(NC_FIXTURE_DIR) + "/" + name;
}

const char* kSmall = "--dimension 8 --n-real 150 --n-fake 600 --fake-modes 4";

size_t Lines(const std::string& text) {
  return static_cast<size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("help lists the exit codes") {
  const Result r = Run("--help");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("Exit codes:") != std::string::npos);
  CHECK(r.out.find("29  SingleClassOnly") != std::string::npos);
  CHECK(r.out.find("pipeline") != std::string::npos);
}

TEST_CASE("usage errors exit with 2 and one JSON line") {
  for (const char* args : {"", "synth --no-such-flag", "bogus",
                           "sample --class maybe --input x"}) {
    CAPTURE(args);
    const Result r = Run(args);
    CHECK(r.exit_code == 2);
    REQUIRE(Lines(r.err) == 1);
    const json j = json::parse(r.err);
    CHECK(j["error"] == "UsageError");
    CHECK(j["exit_code"] == 2);
  }
}

TEST_CASE("library errors map to 10 + status") {
  Scratch dir;
  Result r = Run("eval --scores " + Fixture("scores_only_real.csv") + " --out " +
                 dir.path.string());
  CHECK(r.exit_code == 29);
  json j = json::parse(r.err);
  CHECK(j["error"] == "SingleClassOnly");
  CHECK(j["status"] == 19);
  CHECK(j["exit_code"] == 29);
  CHECK(!j["message"].get<std::string>().empty());
  CHECK(!fs::exists(dir / "metrics.json"));

  r = Run("geometry --input " + Fixture("bad_magic.nceb") + " --out " +
          dir.path.string());
  CHECK(r.exit_code == 11);
  CHECK(json::parse(r.err)["error"] == "BadMagic");

  r = Run("geometry --input " + Fixture("missing.nceb") + " --out " +
          dir.path.string());
  CHECK(r.exit_code == 17);

  r = Run("merge --input " + Fixture("scores_golden.csv") + " --out " +
          dir.path.string());
  CHECK(r.exit_code == 36);
}

TEST_CASE("eval on the golden scores") {
  Scratch dir;
  const Result r =
      Run("eval --scores " + Fixture("scores_golden.csv") + " --out " + dir.path.string());
  REQUIRE(r.exit_code == 0);
  const json m = json::parse(Slurp(dir / "metrics.json"));
  CHECK(m["auc"].get<double>() == doctest::Approx(0.5));
  CHECK(m["n_real"] == 1);
  CHECK(m["n_fake"] == 2);
  CHECK(m["config"]["command"] == "eval");
}

TEST_CASE("sample with top-fraction=1.0 keeps the whole class") {
  Scratch dir;
  REQUIRE(Run(std::string("synth ") + kSmall + " --out " + dir.path.string())
              .exit_code == 0);
  const std::string table = dir / "table.nceb";
  for (const char* cls : {"real", "fake"}) {
    CAPTURE(cls);
    const std::string out = dir / cls;
    const Result r = Run("sample --input " + table + " --class " + cls +
                         " --rule top-fraction=1.0 --out " + out);
    REQUIRE(r.exit_code == 0);
    const std::string manifest = Slurp(fs::path(out) / "manifest.csv");
    CHECK(Lines(manifest) == 1 + (std::string(cls) == "real" ? 150u : 600u));
    const json s = json::parse(Slurp(fs::path(out) / "sampling.json"));
    CHECK(s["config"]["rule"]["value"] == 1.0);
  }
}

TEST_CASE("seed precedence: flag over config over environment") {
  Scratch dir;
  auto synth = [&](const std::string& name, const std::string& extra,
                   const std::string& env = "") {
    const std::string out = dir / name;
    REQUIRE(Run(std::string("synth ") + kSmall + " --out " + out + " " + extra, env)
                .exit_code == 0);
    return Slurp(fs::path(out) / "table.nceb");
  };
  std::ofstream(dir / "cfg.ini") << "seed=5\nn-real=150\n";
  const std::string s5 = synth("flag5", "--seed 5");
  const std::string s7 = synth("flag7", "--seed 7");
  CHECK(s5 != s7);
  CHECK(synth("env7", "", "NC_CORESET_SEED=7") == s7);
  CHECK(synth("cfg", "--config " + (dir / "cfg.ini"), "NC_CORESET_SEED=7") == s5);
  CHECK(synth("flag_over_cfg", "--config " + (dir / "cfg.ini") + " --seed 7") == s7);
  CHECK(synth("default", "") == synth("flag0", "--seed 0"));
}

TEST_CASE("feature extraction resolves paths against the manifest") {
  Scratch dir;
  const Result r = Run("extract-features --input " + Fixture("audio/manifest.csv") +
                       " --out " + dir.path.string());
  REQUIRE(r.exit_code == 0);
  const Result g = Run("geometry --input " + (dir / "features.nceb") + " --out " +
                       dir.path.string());
  CHECK(g.exit_code == 0);
  const std::string proj = Slurp(dir / "projection.csv");
  CHECK(proj.find("sine1k.wav,fake,") != std::string::npos);

  const Result bad = Run("extract-features --input " +
                         Fixture("audio/manifest_stereo.csv") + " --out " +
                         dir.path.string());
  CHECK(bad.exit_code == 30);
}

TEST_CASE("pipeline equals the same steps run one by one") {
  Scratch dir;
  const std::string d = dir.path.string();
  REQUIRE(Run(std::string("synth ") + kSmall + " --seed 1 --out " + d + "/train")
              .exit_code == 0);
  REQUIRE(Run(std::string("synth ") + kSmall + " --seed 2 --out " + d + "/test")
              .exit_code == 0);
  const std::string train = d + "/train/table.nceb", test = d + "/test/table.nceb";
  const std::string common = " --seed 3 --epochs 200 ";
  REQUIRE(Run("pipeline --input " + train + " --test " + test + common + "--out " +
              d + "/pipe")
              .exit_code == 0);

  auto ok = [](const std::string& args) { REQUIRE(Run(args).exit_code == 0); };
  ok("train-toy --input " + train + common + "--out " + d + "/m");
  ok("eval --model " + d + "/m/model.json --input " + train + " --out " + d + "/m");
  CHECK(Slurp(d + "/m/scores.csv") == Slurp(d + "/pipe/train_scores.csv"));
  ok("interest --input " + train + " --scores " + d + "/m/scores.csv --out " + d + "/m");
  CHECK(Slurp(d + "/m/interest.nceb") == Slurp(d + "/pipe/interest.nceb"));
  const std::string interest = d + "/m/interest.nceb";
  ok("sample-real --input " + interest + " --rule top-fraction=1.0 --out " + d + "/m/real");
  ok("sample-fake --input " + interest + common + "--rule top-fraction=0.5 --out " + d +
     "/m/fake");
  CHECK(Slurp(d + "/m/fake/manifest.csv") == Slurp(d + "/pipe/fake/manifest.csv"));
  ok("merge --input " + d + "/m/real/manifest.csv " + d + "/m/fake/manifest.csv --out " +
     d + "/m");
  CHECK(Slurp(d + "/m/manifest.csv") == Slurp(d + "/pipe/manifest.csv"));
  ok("train-toy --input " + interest + " --manifest " + d + "/m/manifest.csv" + common +
     "--out " + d + "/m/sampled");
  ok("eval --model " + d + "/m/sampled/model.json --input " + test + " --out " + d +
     "/m/sampled");

  const json manual = json::parse(Slurp(d + "/m/sampled/metrics.json"));
  const json piped = json::parse(Slurp(d + "/pipe/metrics.json"));
  for (const char* key : {"eer_roc", "map", "auc"})
    CHECK(manual[key] == piped["sampled"][key]);
  CHECK(piped["n_train_full"] == 750);
  CHECK(piped["n_train_sampled"].get<double>() <
        piped["n_train_interest"].get<double>());
  const json geo = json::parse(Slurp(d + "/pipe/geometry.json"));
  CHECK(geo.contains("nc1"));
}

TEST_CASE("repeated runs are byte identical") {
  Scratch dir;
  const std::string d = dir.path.string();
  REQUIRE(Run(std::string("synth ") + kSmall + " --seed 4 --out " + d + "/t").exit_code ==
          0);
  const std::string args = "sample-fake --input " + d + "/t/table.nceb --seed 9 --out ";
  REQUIRE(Run(args + d + "/a").exit_code == 0);
  REQUIRE(Run(args + d + "/b").exit_code == 0);
  CHECK(Slurp(d + "/a/manifest.csv") == Slurp(d + "/b/manifest.csv"));
  // sampling.json records the output directory, so compare without it.
  json a = json::parse(Slurp(d + "/a/sampling.json"));
  json b = json::parse(Slurp(d + "/b/sampling.json"));
  a["config"].erase("out");
  b["config"].erase("out");
  CHECK(a == b);
}
