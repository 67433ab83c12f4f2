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

// nc-coreset: command-line front end over the C interface.
//
// All options live on the top-level app and fall through to subcommands, so
// a flat key=value config file can set any of them. Precedence is
// flag > config file > NC_CORESET_SEED (seed only) > built-in default.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "nccoreset/nccoreset.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kUsageExit = 2;
constexpr int kStatusExitBase = 10;

// Carries a library status out of a subcommand.
struct Failure {
  nc_status status;
  std::string message;
};

void Check(nc_status status) {
  if (status != NC_OK) throw Failure{status, nc_last_error()};
}

[[noreturn]] void Reject(nc_status status, const std::string& message) {
  throw Failure{status, message};
}

struct TableDeleter {
  void operator()(nc_table* p) const { nc_table_free(p); }
};
struct ScoresDeleter {
  void operator()(nc_scores* p) const { nc_scores_free(p); }
};
struct ManifestDeleter {
  void operator()(nc_manifest* p) const { nc_manifest_free(p); }
};
struct ModelDeleter {
  void operator()(nc_model* p) const { nc_model_free(p); }
};
struct StringDeleter {
  void operator()(char* p) const { nc_string_free(p); }
};
using Table = std::unique_ptr<nc_table, TableDeleter>;
using Scores = std::unique_ptr<nc_scores, ScoresDeleter>;
using Manifest = std::unique_ptr<nc_manifest, ManifestDeleter>;
using Model = std::unique_ptr<nc_model, ModelDeleter>;
using CString = std::unique_ptr<char, StringDeleter>;

struct Options {
  std::vector<std::string> input;
  std::string scores;
  std::string out = ".";
  std::string rule = "top-fraction";
  std::optional<double> value;
  std::optional<uint32_t> k_max;
  uint64_t seed = 0;
  std::string overlap_mode = "exclude";
  std::string cls = "fake";
  std::string config;

  std::string test;
  std::string model;
  std::string manifest;
  std::string base_dir;
  double threshold = 0.5;
  int32_t epochs = 500;
  double lr = 0.05;
  std::string real_rule = "top-fraction";
  double real_value = 1.0;

  nc_synth_config synth{};
};

// --- small helpers -------------------------------------------------------

void WriteText(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) Reject(NC_ERR_IO_FAILURE, "cannot open " + path.string());
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) Reject(NC_ERR_IO_FAILURE, "cannot write " + path.string());
}

fs::path OutDir(const Options& o, const std::string& sub = "") {
  fs::path dir = sub.empty() ? fs::path(o.out) : fs::path(o.out) / sub;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    Reject(NC_ERR_IO_FAILURE,
           "cannot create " + dir.string() + ": " + ec.message());
  return dir;
}

const std::string& SingleInput(const Options& o, const char* what) {
  if (o.input.size() != 1)
    Reject(NC_ERR_INVALID_CONFIG,
           std::string("--input must name exactly one ") + what);
  return o.input[0];
}

void RequirePath(const std::string& value, const char* flag) {
  if (value.empty())
    Reject(NC_ERR_INVALID_CONFIG, std::string(flag) + " is required");
}

Table LoadTable(const std::string& path) {
  nc_table* t = nullptr;
  Check(nc_table_load(path.c_str(), &t));
  return Table(t);
}

Scores LoadScores(const std::string& path) {
  nc_scores* s = nullptr;
  Check(nc_scores_load(path.c_str(), &s));
  return Scores(s);
}

Manifest LoadManifest(const std::string& path) {
  nc_manifest* m = nullptr;
  Check(nc_manifest_load(path.c_str(), &m));
  return Manifest(m);
}

json ParseReport(const char* text) { return json::parse(text); }

std::string Dump(const json& j) { return j.dump(2) + "\n"; }

// `name` or `name=value`; the inline value overrides `value`.
nc_rule ParseRule(const std::string& spec, std::optional<double> value,
                  double default_value) {
  std::string name = spec;
  const auto eq = spec.find('=');
  if (eq != std::string::npos) {
    name = spec.substr(0, eq);
    const std::string v = spec.substr(eq + 1);
    try {
      size_t used = 0;
      value = std::stod(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
    } catch (const std::exception&) {
      Reject(NC_ERR_INVALID_CONFIG, "bad rule value '" + v + "'");
    }
  }
  nc_rule rule{};
  if (name == "threshold") {
    rule.mode = NC_RULE_THRESHOLD;
  } else if (name == "top-fraction") {
    rule.mode = NC_RULE_TOP_FRACTION;
  } else if (name == "top-count") {
    rule.mode = NC_RULE_TOP_COUNT;
  } else {
    Reject(NC_ERR_INVALID_CONFIG, "unknown rule '" + name + "'");
  }
  rule.value = value.value_or(default_value);
  return rule;
}

const char* RuleName(nc_rule_mode mode) {
  switch (mode) {
    case NC_RULE_THRESHOLD: return "threshold";
    case NC_RULE_TOP_FRACTION: return "top-fraction";
    case NC_RULE_TOP_COUNT: return "top-count";
  }
  return "unknown";
}

json RuleJson(nc_rule rule) {
  return json{{"mode", RuleName(rule.mode)}, {"value", rule.value}};
}

nc_overlap_mode ParseOverlap(const std::string& s) {
  if (s == "exclude") return NC_OVERLAP_EXCLUDE;
  if (s == "merged") return NC_OVERLAP_MERGED;
  Reject(NC_ERR_INVALID_CONFIG, "unknown overlap mode '" + s + "'");
}

nc_label ParseClass(const std::string& s) {
  if (s == "real") return NC_LABEL_REAL;
  if (s == "fake") return NC_LABEL_FAKE;
  Reject(NC_ERR_INVALID_CONFIG, "unknown class '" + s + "'");
}

// k_max from the flag, else the number of fake algorithm tags.
uint32_t ResolveKMax(const Options& o, const nc_table* table) {
  if (o.k_max) return *o.k_max;
  const uint32_t k = nc_table_fake_algorithms(table);
  if (k == 0)
    Reject(NC_ERR_INVALID_CONFIG,
           "--k-max is required when fake records carry no algorithm_id");
  return k;
}

json BaseConfig(const std::string& command, const Options& o) {
  json c;
  c["command"] = command;
  c["seed"] = o.seed;
  c["input"] = o.input;
  c["out"] = o.out;
  c["config"] = o.config;
  return c;
}

json MetricsJson(const nc_metrics& m) {
  return json{{"eer_roc", m.eer_roc},
              {"map", m.map},
              {"auc", m.auc},
              {"n_real", m.n_real},
              {"n_fake", m.n_fake}};
}

std::string ModelText(const nc_model* model, const json& config) {
  char* raw = nullptr;
  Check(nc_model_json(model, &raw));
  CString text(raw);
  json j = ParseReport(text.get());
  j["config"] = config;
  return Dump(j);
}

std::string GeometryText(const nc_table* table, const json& config) {
  char* raw = nullptr;
  Check(nc_geometry_json(table, &raw));
  CString text(raw);
  json j = ParseReport(text.get());
  j["config"] = config;
  return Dump(j);
}

std::string ProjectionText(const nc_table* table) {
  char* raw = nullptr;
  Check(nc_projection_csv(table, &raw));
  CString text(raw);
  return text.get();
}

Model Train(const nc_table* table, const Options& o) {
  nc_model* m = nullptr;
  Check(nc_model_train(table, o.epochs, o.lr, o.seed, &m));
  return Model(m);
}

Scores Predict(const nc_model* model, const nc_table* table) {
  nc_scores* s = nullptr;
  Check(nc_model_predict(model, table, &s));
  return Scores(s);
}

nc_metrics Evaluate(const nc_scores* scores) {
  nc_metrics m{};
  Check(nc_evaluate(scores, &m));
  return m;
}

json SelectionSummary(const nc_manifest* manifest) {
  return json{{"selected", nc_manifest_size(manifest)},
              {"selected_real", nc_manifest_count(manifest, NC_LABEL_REAL)},
              {"selected_fake", nc_manifest_count(manifest, NC_LABEL_FAKE)}};
}

// Shared by sample-fake and pipeline. Writes manifest.csv and sampling.json
// into `dir`.
Manifest SampleFake(const nc_table* table, const Options& o, nc_rule rule,
                    const fs::path& dir, json config) {
  const uint32_t k_max = ResolveKMax(o, table);
  const nc_overlap_mode mode = ParseOverlap(o.overlap_mode);
  nc_manifest* m = nullptr;
  char* raw = nullptr;
  Check(nc_sample_fake(table, rule, k_max, o.seed, mode, &m, &raw));
  Manifest manifest(m);
  CString report_text(raw);
  Check(nc_manifest_store(manifest.get(), (dir / "manifest.csv").c_str()));
  config["k_max"] = k_max;
  config["overlap_mode"] = o.overlap_mode;
  config["rule"] = RuleJson(rule);
  json report = ParseReport(report_text.get());
  report["config"] = config;
  report.update(SelectionSummary(manifest.get()));
  WriteText(dir / "sampling.json", Dump(report));
  return manifest;
}

Manifest SelectClass(const nc_table* table, nc_label label, nc_rule rule,
                     const fs::path& dir, json config) {
  nc_manifest* m = nullptr;
  Check(nc_select_class(table, label, rule, &m));
  Manifest manifest(m);
  Check(nc_manifest_store(manifest.get(), (dir / "manifest.csv").c_str()));
  config["class"] = label == NC_LABEL_REAL ? "real" : "fake";
  config["rule"] = RuleJson(rule);
  json report = SelectionSummary(manifest.get());
  report["config"] = config;
  WriteText(dir / "sampling.json", Dump(report));
  return manifest;
}

// --- subcommands ---------------------------------------------------------

void RunSynth(const Options& o) {
  nc_table* t = nullptr;
  Check(nc_synth_generate(&o.synth, &t));
  Table table(t);
  Check(nc_table_store(table.get(), (OutDir(o) / "table.nceb").c_str()));
}

void RunExtractFeatures(const Options& o) {
  const std::string& manifest = SingleInput(o, "manifest CSV");
  nc_table* t = nullptr;
  Check(nc_extract_features(manifest.c_str(),
                            o.base_dir.empty() ? nullptr : o.base_dir.c_str(),
                            &t));
  Table table(t);
  Check(nc_table_store(table.get(), (OutDir(o) / "features.nceb").c_str()));
}

void RunInterest(const Options& o) {
  RequirePath(o.scores, "--scores");
  Table table = LoadTable(SingleInput(o, "table"));
  Scores scores = LoadScores(o.scores);
  nc_table* t = nullptr;
  Check(nc_interest_filter(table.get(), scores.get(), o.threshold, &t));
  Table interest(t);
  Check(nc_table_store(interest.get(), (OutDir(o) / "interest.nceb").c_str()));
}

void RunGeometry(const Options& o) {
  Table table = LoadTable(SingleInput(o, "table"));
  const fs::path dir = OutDir(o);
  WriteText(dir / "geometry.json",
            GeometryText(table.get(), BaseConfig("geometry", o)));
  WriteText(dir / "projection.csv", ProjectionText(table.get()));
}

void RunSample(const Options& o, const std::string& command, nc_label label) {
  Table table = LoadTable(SingleInput(o, "table"));
  const nc_rule rule = ParseRule(o.rule, o.value, 1.0);
  SelectClass(table.get(), label, rule, OutDir(o), BaseConfig(command, o));
}

void RunSampleFake(const Options& o) {
  Table table = LoadTable(SingleInput(o, "table"));
  const nc_rule rule = ParseRule(o.rule, o.value, 1.0);
  SampleFake(table.get(), o, rule, OutDir(o), BaseConfig("sample-fake", o));
}

void RunSampleRandom(const Options& o) {
  Table table = LoadTable(SingleInput(o, "table"));
  if (!o.value)
    Reject(NC_ERR_INVALID_CONFIG, "--value (samples per class) is required");
  const double v = *o.value;
  if (!(v >= 0.0) || v != static_cast<double>(static_cast<uint64_t>(v)))
    Reject(NC_ERR_INVALID_CONFIG, "--value must be a non-negative integer");
  nc_manifest* m = nullptr;
  Check(nc_select_random(table.get(), static_cast<uint64_t>(v), o.seed, &m));
  Manifest manifest(m);
  const fs::path dir = OutDir(o);
  Check(nc_manifest_store(manifest.get(), (dir / "manifest.csv").c_str()));
  json report = SelectionSummary(manifest.get());
  report["config"] = BaseConfig("sample-random", o);
  report["config"]["per_class"] = static_cast<uint64_t>(v);
  WriteText(dir / "sampling.json", Dump(report));
}

void RunMerge(const Options& o) {
  if (o.input.size() < 2)
    Reject(NC_ERR_INVALID_CONFIG, "merge needs at least two --input manifests");
  Manifest merged = LoadManifest(o.input[0]);
  for (size_t i = 1; i < o.input.size(); ++i) {
    Manifest next = LoadManifest(o.input[i]);
    nc_manifest* m = nullptr;
    Check(nc_manifest_merge(merged.get(), next.get(), &m));
    merged.reset(m);
  }
  Check(nc_manifest_store(merged.get(), (OutDir(o) / "manifest.csv").c_str()));
}

void RunTrainToy(const Options& o) {
  Table table = LoadTable(SingleInput(o, "table"));
  if (!o.manifest.empty()) {
    Manifest manifest = LoadManifest(o.manifest);
    nc_table* t = nullptr;
    Check(nc_table_subset(table.get(), manifest.get(), &t));
    table.reset(t);
  }
  Model model = Train(table.get(), o);
  json config = BaseConfig("train-toy", o);
  config["manifest"] = o.manifest;
  config["epochs"] = o.epochs;
  config["lr"] = o.lr;
  config["n_train"] = nc_table_size(table.get());
  WriteText(OutDir(o) / "model.json", ModelText(model.get(), config));
}

void RunEval(const Options& o) {
  const fs::path dir = OutDir(o);
  Scores scores;
  if (!o.scores.empty()) {
    scores = LoadScores(o.scores);
  } else {
    RequirePath(o.model, "--scores or --model");
    nc_model* m = nullptr;
    Check(nc_model_load(o.model.c_str(), &m));
    Model model(m);
    Table table = LoadTable(SingleInput(o, "table"));
    scores = Predict(model.get(), table.get());
    Check(nc_scores_store(scores.get(), (dir / "scores.csv").c_str()));
  }
  json report = MetricsJson(Evaluate(scores.get()));
  json config = BaseConfig("eval", o);
  config["scores"] = o.scores;
  config["model"] = o.model;
  report["config"] = config;
  WriteText(dir / "metrics.json", Dump(report));
}

// Full flow: train on everything, keep the samples of interest, sample each
// class, retrain on the union and score both models on the held-out table.
void RunPipeline(const Options& o) {
  RequirePath(o.test, "--test");
  Table train = LoadTable(SingleInput(o, "training table"));
  Table test = LoadTable(o.test);
  const nc_rule fake_rule = ParseRule(o.rule, o.value, 0.5);
  const nc_rule real_rule = ParseRule(o.real_rule, std::nullopt, o.real_value);

  json config = BaseConfig("pipeline", o);
  config["test"] = o.test;
  config["scores"] = o.scores;
  config["epochs"] = o.epochs;
  config["lr"] = o.lr;
  config["threshold"] = o.threshold;
  config["fake_rule"] = RuleJson(fake_rule);
  config["real_rule"] = RuleJson(real_rule);
  config["overlap_mode"] = o.overlap_mode;

  const fs::path root = OutDir(o);
  const fs::path full_dir = OutDir(o, "full");
  Model full = Train(train.get(), o);
  WriteText(full_dir / "model.json", ModelText(full.get(), config));

  Scores train_scores;
  if (!o.scores.empty()) {
    train_scores = LoadScores(o.scores);
  } else {
    train_scores = Predict(full.get(), train.get());
    Check(nc_scores_store(train_scores.get(),
                          (root / "train_scores.csv").c_str()));
  }

  nc_table* t = nullptr;
  Check(nc_interest_filter(train.get(), train_scores.get(), o.threshold, &t));
  Table interest(t);
  Check(nc_table_store(interest.get(), (root / "interest.nceb").c_str()));
  WriteText(root / "geometry.json", GeometryText(interest.get(), config));
  WriteText(root / "projection.csv", ProjectionText(interest.get()));

  Manifest real = SelectClass(interest.get(), NC_LABEL_REAL, real_rule,
                              OutDir(o, "real"), config);
  Manifest fake =
      SampleFake(interest.get(), o, fake_rule, OutDir(o, "fake"), config);
  nc_manifest* m = nullptr;
  Check(nc_manifest_merge(real.get(), fake.get(), &m));
  Manifest merged(m);
  Check(nc_manifest_store(merged.get(), (root / "manifest.csv").c_str()));

  Check(nc_table_subset(interest.get(), merged.get(), &t));
  Table sampled_table(t);
  const fs::path sampled_dir = OutDir(o, "sampled");
  Model sampled = Train(sampled_table.get(), o);
  WriteText(sampled_dir / "model.json", ModelText(sampled.get(), config));

  const nc_metrics full_metrics =
      Evaluate(Predict(full.get(), test.get()).get());
  const nc_metrics sampled_metrics =
      Evaluate(Predict(sampled.get(), test.get()).get());
  json full_report = MetricsJson(full_metrics);
  full_report["config"] = config;
  WriteText(full_dir / "metrics.json", Dump(full_report));
  json sampled_report = MetricsJson(sampled_metrics);
  sampled_report["config"] = config;
  WriteText(sampled_dir / "metrics.json", Dump(sampled_report));

  const uint64_t n_full = nc_table_size(train.get());
  const uint64_t n_sampled = nc_table_size(sampled_table.get());
  json summary{{"full", MetricsJson(full_metrics)},
               {"sampled", MetricsJson(sampled_metrics)},
               {"n_train_full", n_full},
               {"n_train_interest", nc_table_size(interest.get())},
               {"n_train_sampled", n_sampled},
               {"train_fraction",
                n_full ? static_cast<double>(n_sampled) / n_full : 0.0},
               {"config", config}};
  WriteText(root / "metrics.json", Dump(summary));
}

std::string ExitCodeTable() {
  std::ostringstream s;
  s << "Exit codes:\n  0   success\n  " << kUsageExit
    << "   usage error (bad flag or value)\n";
  for (int i = 1; i < NC_ERR_INTERNAL + 1; ++i) {
    s << "  " << kStatusExitBase + i << "  "
      << nc_status_name(static_cast<nc_status>(i)) << "\n";
  }
  s << "On failure one JSON line {\"error\", \"status\", \"exit_code\", "
       "\"message\"} is written to stderr.\n";
  return s.str();
}

void PrintError(const std::string& name, int status, int exit_code,
                const std::string& message) {
  json line{{"error", name},
            {"status", status},
            {"exit_code", exit_code},
            {"message", message}};
  std::cerr << line.dump() << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  nc_synth_config_default(&o.synth);

  CLI::App app{"Neural-collapse coreset sampling for audio deepfake detection"};
  app.require_subcommand(1);
  app.footer(ExitCodeTable());
  app.set_config("--config", "", "Flat key=value file; flags take precedence")
      ->check(CLI::ExistingFile);

  app.add_option("--input", o.input, "Input table, manifest or WAV list")
      ->take_all();
  app.add_option("--scores", o.scores, "Score CSV sample_id,label,score");
  app.add_option("--out", o.out, "Output directory")->capture_default_str();
  app.add_option("--rule", o.rule,
                 "threshold | top-fraction | top-count, optionally =VALUE")
      ->capture_default_str();
  app.add_option("--value", o.value, "Rule parameter (or per-class count)");
  app.add_option("--k-max", o.k_max,
                 "Largest fake cluster count (default: distinct fake "
                 "algorithm ids)");
  app.add_option("--seed", o.seed, "Seed (falls back to NC_CORESET_SEED)")
      ->envname("NC_CORESET_SEED")
      ->capture_default_str();
  app.add_option("--overlap-mode", o.overlap_mode, "exclude | merged")
      ->check(CLI::IsMember({"exclude", "merged"}))
      ->capture_default_str();
  app.add_option("--class", o.cls, "real | fake (sample)")
      ->check(CLI::IsMember({"real", "fake"}))
      ->capture_default_str();

  app.add_option("--test", o.test, "Held-out table (pipeline)");
  app.add_option("--model", o.model, "Model JSON (eval)");
  app.add_option("--manifest", o.manifest, "Training subset (train-toy)");
  app.add_option("--base-dir", o.base_dir,
                 "Root for relative WAV paths (default: manifest directory)");
  app.add_option("--threshold", o.threshold, "Fake-score decision threshold")
      ->capture_default_str();
  app.add_option("--epochs", o.epochs, "Gradient-descent epochs")
      ->capture_default_str();
  app.add_option("--lr", o.lr, "Learning rate")->capture_default_str();
  app.add_option("--real-rule", o.real_rule, "Real-class rule (pipeline)")
      ->capture_default_str();
  app.add_option("--real-value", o.real_value, "Real-class rule parameter")
      ->capture_default_str();

  app.add_option("--dimension", o.synth.dimension)->capture_default_str();
  app.add_option("--n-real", o.synth.n_real)->capture_default_str();
  app.add_option("--n-fake", o.synth.n_fake)->capture_default_str();
  app.add_option("--fake-modes", o.synth.fake_modes)->capture_default_str();
  app.add_option("--separation", o.synth.mode_separation)
      ->capture_default_str();
  app.add_option("--within-std", o.synth.within_std)->capture_default_str();

  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"extract-features", "WAV list -> features.nceb (80-band log-mel)"},
      {"synth", "Synthetic table -> table.nceb"},
      {"interest", "Keep correctly scored records -> interest.nceb"},
      {"geometry", "Class geometry -> geometry.json, projection.csv"},
      {"sample", "Nearest-to-mean selection of --class -> manifest.csv"},
      {"sample-real", "Nearest-to-mean selection of real -> manifest.csv"},
      {"sample-fake", "Cluster-wise fake selection -> manifest.csv"},
      {"sample-random", "Uniform --value per class -> manifest.csv"},
      {"merge", "Union of --input manifests -> manifest.csv"},
      {"train-toy", "Logistic model -> model.json"},
      {"eval", "Scores or --model on --input -> metrics.json"},
      {"pipeline", "Train, filter, sample, retrain, evaluate"},
  };
  for (const auto& c : commands) app.add_subcommand(c.name, c.help)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    PrintError("UsageError", -1, kUsageExit, e.what());
    return kUsageExit;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  if (command == "synth") o.synth.seed = o.seed;
  try {
    if (command == "extract-features") RunExtractFeatures(o);
    else if (command == "synth") RunSynth(o);
    else if (command == "interest") RunInterest(o);
    else if (command == "geometry") RunGeometry(o);
    else if (command == "sample") RunSample(o, command, ParseClass(o.cls));
    else if (command == "sample-real") RunSample(o, command, NC_LABEL_REAL);
    else if (command == "sample-fake") RunSampleFake(o);
    else if (command == "sample-random") RunSampleRandom(o);
    else if (command == "merge") RunMerge(o);
    else if (command == "train-toy") RunTrainToy(o);
    else if (command == "eval") RunEval(o);
    else if (command == "pipeline") RunPipeline(o);
  } catch (const Failure& f) {
    const int exit_code = kStatusExitBase + static_cast<int>(f.status);
    PrintError(nc_status_name(f.status), f.status, exit_code, f.message);
    return exit_code;
  } catch (const std::exception& e) {
    const int exit_code = kStatusExitBase + NC_ERR_INTERNAL;
    PrintError("Internal", NC_ERR_INTERNAL, exit_code, e.what());
    return exit_code;
  }
  return 0;
}
