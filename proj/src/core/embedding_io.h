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

// Interchange formats: the binary embedding table (.nceb), the score CSV and
// the selection manifest CSV.

#ifndef NCCORESET_CORE_EMBEDDING_IO_H_
#define NCCORESET_CORE_EMBEDDING_IO_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace nccoreset {

enum class Label : uint8_t { kReal = 0, kFake = 1 };

inline constexpr Label kLabels[] = {Label::kReal, Label::kFake};

// "real" / "fake"; the only tokens accepted on disk.
std::string_view LabelToken(Label label);
Label ParseLabelToken(std::string_view token);

struct EmbeddingRecord {
  std::string sample_id;
  Label label = Label::kReal;
  uint16_t algorithm_id = 0;  // 0 = bonafide / untagged
  std::vector<float> embedding;

  bool operator==(const EmbeddingRecord&) const = default;
};

// Ordered records of a fixed dimension. Add() enforces every record
// invariant, so a constructed table is always valid.
class EmbeddingTable {
 public:
  explicit EmbeddingTable(uint32_t dimension);

  void Add(EmbeddingRecord record);
  void Reserve(size_t n) { records_.reserve(n); }

  uint32_t dimension() const { return dimension_; }
  size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }
  const std::vector<EmbeddingRecord>& records() const { return records_; }
  const EmbeddingRecord& operator[](size_t i) const { return records_[i]; }

  size_t Count(Label label) const;
  // nullptr when absent.
  const EmbeddingRecord* Find(std::string_view sample_id) const;

  bool operator==(const EmbeddingTable& other) const {
    return dimension_ == other.dimension_ && records_ == other.records_;
  }

 private:
  uint32_t dimension_;
  std::vector<EmbeddingRecord> records_;
  std::unordered_map<std::string, size_t> index_;
};

// .nceb layout, little-endian:
//   "NCEB" | u32 version=1 | u32 dimension | u64 count |
//   count x (u8 label | u16 algorithm_id | u32 id_len | id bytes |
//            dimension x f32)
inline constexpr uint32_t kTableFormatVersion = 1;

std::string EncodeTable(const EmbeddingTable& table);
EmbeddingTable DecodeTable(std::string_view bytes);
EmbeddingTable LoadTable(const std::string& path);
void StoreTable(const EmbeddingTable& table, const std::string& path);

struct ScoreRow {
  std::string sample_id;
  Label label = Label::kReal;
  double score = 0.0;  // higher = more likely fake

  bool operator==(const ScoreRow&) const = default;
};

class ScoreTable {
 public:
  ScoreTable() = default;

  void Add(ScoreRow row);

  size_t size() const { return rows_.size(); }
  const std::vector<ScoreRow>& rows() const { return rows_; }
  const ScoreRow* Find(std::string_view sample_id) const;
  size_t Count(Label label) const;

  bool operator==(const ScoreTable& other) const {
    return rows_ == other.rows_;
  }

 private:
  std::vector<ScoreRow> rows_;
  std::unordered_map<std::string, size_t> index_;
};

ScoreTable ParseScoreCsv(std::string_view text);
std::string FormatScoreCsv(const ScoreTable& scores);
ScoreTable ReadScoreTable(const std::string& path);
void WriteScoreTable(const ScoreTable& scores, const std::string& path);

enum class SelectionRule : uint8_t {
  kThreshold,
  kTopFraction,
  kTopCount,
  kRandom,
  kClusterThreshold,
};

std::string_view SelectionRuleToken(SelectionRule rule);
SelectionRule ParseSelectionRuleToken(std::string_view token);

struct ManifestRow {
  std::string sample_id;
  Label label = Label::kReal;
  int64_t cluster_id = -1;
  double distance = 0.0;
  SelectionRule rule = SelectionRule::kThreshold;

  bool operator==(const ManifestRow&) const = default;
};

struct SelectionManifest {
  std::vector<ManifestRow> rows;

  bool operator==(const SelectionManifest&) const = default;
};

// Canonical manifest order: (label, distance, sample_id) ascending.
void SortManifest(SelectionManifest* manifest);

std::string FormatManifestCsv(const SelectionManifest& manifest);
SelectionManifest ParseManifestCsv(std::string_view text);
void WriteManifest(const SelectionManifest& manifest, const std::string& path);
SelectionManifest ReadManifest(const std::string& path);

// Records of `table` named by `manifest`, in table order. A manifest id that
// is absent from the table, or carries a different label, is an
// InvariantViolation.
EmbeddingTable SubsetTable(const EmbeddingTable& table,
                           const SelectionManifest& manifest);

// Shortest decimal text that parses back to the same double.
std::string FormatDouble(double value);

std::string ReadFileBytes(const std::string& path);
void WriteFileBytes(const std::string& path, std::string_view bytes);

}  // namespace nccoreset

#endif  // NCCORESET_CORE_EMBEDDING_IO_H_
