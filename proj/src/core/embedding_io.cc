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

#include "core/embedding_io.h"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>

#include "core/error.h"

namespace nccoreset {

namespace {

constexpr char kMagic[4] = {'N', 'C', 'E', 'B'};
constexpr std::string_view kScoreHeader = "sample_id,label,score";
constexpr std::string_view kManifestHeader =
    "sample_id,label,cluster_id,distance,rule";

bool ValidUtf8(std::string_view s) {
  size_t i = 0;
  while (i < s.size()) {
    const auto c = static_cast<unsigned char>(s[i]);
    size_t extra;
    uint32_t cp;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      extra = 1;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      extra = 2;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      extra = 3;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + extra >= s.size()) return false;
    for (size_t k = 1; k <= extra; ++k) {
      const auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong encodings, surrogates, out of range.
    if ((extra == 1 && cp < 0x80) || (extra == 2 && cp < 0x800) ||
        (extra == 3 && cp < 0x10000) || cp > 0x10FFFF ||
        (cp >= 0xD800 && cp <= 0xDFFF))
      return false;
    i += extra + 1;
  }
  return true;
}

// Characters that would break the unquoted CSV formats.
void CheckCsvSafeId(std::string_view id) {
  if (id.empty() || id.find_first_of(",\r\n") != std::string_view::npos)
    Fail(ErrorCode::kInvariantViolation,
         "sample_id is empty or contains ',' or a line break: '" +
             std::string(id) + "'");
}

class ByteWriter {
 public:
  void Bytes(std::string_view b) { out_.append(b); }
  void U8(uint8_t v) { out_.push_back(static_cast<char>(v)); }
  void U16(uint16_t v) {
    for (int i = 0; i < 2; ++i) U8(static_cast<uint8_t>(v >> (8 * i)));
  }
  void U32(uint32_t v) {
    for (int i = 0; i < 4; ++i) U8(static_cast<uint8_t>(v >> (8 * i)));
  }
  void U64(uint64_t v) {
    for (int i = 0; i < 8; ++i) U8(static_cast<uint8_t>(v >> (8 * i)));
  }
  void F32(float v) { U32(std::bit_cast<uint32_t>(v)); }
  std::string Take() { return std::move(out_); }

 private:
  std::string out_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  size_t pos() const { return pos_; }
  size_t remaining() const { return bytes_.size() - pos_; }
  size_t size() const { return bytes_.size(); }

  uint64_t Uint(int width, const char* what) {
    Need(width, what);
    uint64_t v = 0;
    for (int i = 0; i < width; ++i)
      v |= static_cast<uint64_t>(static_cast<unsigned char>(bytes_[pos_ + i]))
           << (8 * i);
    pos_ += width;
    return v;
  }
  std::string_view Take(size_t n, const char* what) {
    Need(n, what);
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  uint8_t PeekU8(size_t at) const {
    return static_cast<unsigned char>(bytes_[at]);
  }
  uint64_t PeekUint(size_t at, int width) const {
    uint64_t v = 0;
    for (int i = 0; i < width; ++i)
      v |= static_cast<uint64_t>(static_cast<unsigned char>(bytes_[at + i]))
           << (8 * i);
    return v;
  }

 private:
  void Need(size_t n, const char* what) const {
    if (remaining() < n)
      Fail(ErrorCode::kTruncatedFile,
           std::string("file ends inside ") + what + " at byte " +
               std::to_string(pos_));
  }

  std::string_view bytes_;
  size_t pos_ = 0;
};

// Whether a structurally valid record header could start at `at`. Only used
// to tell a short/long embedding apart from plain truncation.
bool PlausibleRecordAt(const ByteReader& r, size_t at, uint32_t dimension) {
  if (at + 7 > r.size()) return false;
  const uint8_t label = r.PeekU8(at);
  if (label > 1) return false;
  const auto algorithm = r.PeekUint(at + 1, 2);
  if (label == 0 && algorithm != 0) return false;
  const auto id_len = r.PeekUint(at + 3, 4);
  if (id_len == 0) return false;
  return at + 7 + id_len + 4ull * dimension <= r.size();
}

void CheckEmbeddingExtent(const ByteReader& r, uint64_t index, uint64_t count,
                          uint32_t dimension) {
  const size_t start = r.pos();
  const size_t need = 4ull * dimension;
  const size_t remaining = r.remaining();
  const std::string where = "record " + std::to_string(index);
  if (index + 1 == count) {
    if (remaining < need) {
      if (remaining > 0 && remaining % 4 == 0)
        Fail(ErrorCode::kDimensionMismatch,
             where + " holds " + std::to_string(remaining / 4) +
                 " floats, header declares " + std::to_string(dimension));
      Fail(ErrorCode::kTruncatedFile, "file ends inside " + where);
    }
    if (remaining > need) {
      if ((remaining - need) % 4 == 0)
        Fail(ErrorCode::kDimensionMismatch,
             where + " holds " + std::to_string(remaining / 4) +
                 " floats, header declares " + std::to_string(dimension));
      Fail(ErrorCode::kInvariantViolation,
           std::to_string(remaining - need) + " trailing bytes after " +
               where);
    }
    return;
  }
  if (PlausibleRecordAt(r, start + need, dimension)) return;
  const size_t max_floats = std::min<size_t>(remaining / 4, 2ull * dimension);
  for (size_t m = 1; m <= max_floats; ++m) {
    if (m == dimension) continue;
    if (PlausibleRecordAt(r, start + 4 * m, dimension))
      Fail(ErrorCode::kDimensionMismatch,
           where + " holds " + std::to_string(m) +
               " floats, header declares " + std::to_string(dimension));
  }
  if (remaining < need)
    Fail(ErrorCode::kTruncatedFile, "file ends inside " + where);
}

template <typename T>
T ParseNumber(std::string_view field, const char* what, size_t line) {
  T value{};
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (field.empty() || ec != std::errc() || ptr != last)
    Fail(ErrorCode::kMalformedRow, "line " + std::to_string(line) +
                                       ": cannot parse " + what + " '" +
                                       std::string(field) + "'");
  return value;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  size_t start = 0;
  while (true) {
    const size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

// Splits into lines, dropping a trailing "\r" and a final empty line.
std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start < text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  return lines;
}

void CheckHeader(const std::vector<std::string_view>& lines,
                 std::string_view header) {
  if (lines.empty() || lines[0] != header)
    Fail(ErrorCode::kMalformedRow,
         "expected header '" + std::string(header) + "'");
}

}  // namespace

std::string_view LabelToken(Label label) {
  return label == Label::kReal ? "real" : "fake";
}

Label ParseLabelToken(std::string_view token) {
  if (token == "real") return Label::kReal;
  if (token == "fake") return Label::kFake;
  Fail(ErrorCode::kUnknownLabelToken,
       "unknown label token '" + std::string(token) + "'");
}

EmbeddingTable::EmbeddingTable(uint32_t dimension) : dimension_(dimension) {
  if (dimension == 0)
    Fail(ErrorCode::kInvariantViolation, "table dimension must be >= 1");
}

void EmbeddingTable::Add(EmbeddingRecord record) {
  if (record.embedding.size() != dimension_)
    Fail(ErrorCode::kDimensionMismatch,
         "record '" + record.sample_id + "' has " +
             std::to_string(record.embedding.size()) +
             " components, table dimension is " + std::to_string(dimension_));
  if (record.sample_id.empty() || !ValidUtf8(record.sample_id))
    Fail(ErrorCode::kInvariantViolation,
         "sample_id is empty or not valid UTF-8");
  if (record.label != Label::kReal && record.label != Label::kFake)
    Fail(ErrorCode::kInvariantViolation,
         "record '" + record.sample_id + "' has an invalid label");
  if (record.label == Label::kReal && record.algorithm_id != 0)
    Fail(ErrorCode::kInvariantViolation,
         "real record '" + record.sample_id + "' carries algorithm_id " +
             std::to_string(record.algorithm_id));
  for (float v : record.embedding)
    if (!std::isfinite(v))
      Fail(ErrorCode::kNonFiniteValue,
           "record '" + record.sample_id + "' has a non-finite component");
  auto [it, inserted] = index_.emplace(record.sample_id, records_.size());
  if (!inserted)
    Fail(ErrorCode::kDuplicateSampleId,
         "duplicate sample_id '" + record.sample_id + "'");
  records_.push_back(std::move(record));
}

size_t EmbeddingTable::Count(Label label) const {
  return static_cast<size_t>(
      std::count_if(records_.begin(), records_.end(),
                    [label](const auto& r) { return r.label == label; }));
}

const EmbeddingRecord* EmbeddingTable::Find(std::string_view sample_id) const {
  auto it = index_.find(std::string(sample_id));
  return it == index_.end() ? nullptr : &records_[it->second];
}

std::string EncodeTable(const EmbeddingTable& table) {
  ByteWriter w;
  w.Bytes(std::string_view(kMagic, 4));
  w.U32(kTableFormatVersion);
  w.U32(table.dimension());
  w.U64(table.size());
  for (const auto& r : table.records()) {
    if (r.sample_id.size() > UINT32_MAX)
      Fail(ErrorCode::kInvariantViolation, "sample_id too long");
    w.U8(static_cast<uint8_t>(r.label));
    w.U16(r.algorithm_id);
    w.U32(static_cast<uint32_t>(r.sample_id.size()));
    w.Bytes(r.sample_id);
    for (float v : r.embedding) w.F32(v);
  }
  return w.Take();
}

EmbeddingTable DecodeTable(std::string_view bytes) {
  if (bytes.size() < 4 || bytes.substr(0, 4) != std::string_view(kMagic, 4))
    Fail(ErrorCode::kBadMagic, "missing NCEB magic");
  ByteReader r(bytes);
  r.Take(4, "magic");
  const auto version = static_cast<uint32_t>(r.Uint(4, "header"));
  if (version != kTableFormatVersion)
    Fail(ErrorCode::kVersionMismatch,
         "unsupported version " + std::to_string(version));
  const auto dimension = static_cast<uint32_t>(r.Uint(4, "header"));
  const uint64_t count = r.Uint(8, "header");
  EmbeddingTable table(dimension);
  // Each record takes at least 7 + 4*dimension bytes.
  if (count > r.remaining() / (7 + 4ull * dimension) + 1)
    Fail(ErrorCode::kTruncatedFile,
         "header declares " + std::to_string(count) +
             " records, file is too short");
  table.Reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    EmbeddingRecord rec;
    const auto label = static_cast<uint8_t>(r.Uint(1, "record header"));
    rec.algorithm_id = static_cast<uint16_t>(r.Uint(2, "record header"));
    const auto id_len = r.Uint(4, "record header");
    rec.sample_id = std::string(r.Take(id_len, "sample_id"));
    if (label > 1)
      Fail(ErrorCode::kInvariantViolation,
           "record " + std::to_string(i) + " has label byte " +
               std::to_string(label));
    rec.label = static_cast<Label>(label);
    CheckEmbeddingExtent(r, i, count, dimension);
    rec.embedding.resize(dimension);
    for (auto& v : rec.embedding)
      v = std::bit_cast<float>(static_cast<uint32_t>(r.Uint(4, "embedding")));
    table.Add(std::move(rec));
  }
  if (r.remaining() != 0)
    Fail(ErrorCode::kInvariantViolation,
         std::to_string(r.remaining()) + " trailing bytes after last record");
  return table;
}

std::string ReadFileBytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail(ErrorCode::kIoFailure, "cannot open '" + path + "'");
  std::string bytes((std::istreambuf_iterator<char>(in)),
                    std::istreambuf_iterator<char>());
  if (in.bad()) Fail(ErrorCode::kIoFailure, "error reading '" + path + "'");
  return bytes;
}

void WriteFileBytes(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) Fail(ErrorCode::kIoFailure, "cannot create '" + path + "'");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  if (!out) Fail(ErrorCode::kIoFailure, "error writing '" + path + "'");
}

EmbeddingTable LoadTable(const std::string& path) {
  return DecodeTable(ReadFileBytes(path));
}

void StoreTable(const EmbeddingTable& table, const std::string& path) {
  WriteFileBytes(path, EncodeTable(table));
}

void ScoreTable::Add(ScoreRow row) {
  if (!std::isfinite(row.score))
    Fail(ErrorCode::kNonFiniteValue,
         "score for '" + row.sample_id + "' is not finite");
  auto [it, inserted] = index_.emplace(row.sample_id, rows_.size());
  if (!inserted)
    Fail(ErrorCode::kDuplicateSampleId,
         "duplicate sample_id '" + row.sample_id + "'");
  rows_.push_back(std::move(row));
}

const ScoreRow* ScoreTable::Find(std::string_view sample_id) const {
  auto it = index_.find(std::string(sample_id));
  return it == index_.end() ? nullptr : &rows_[it->second];
}

size_t ScoreTable::Count(Label label) const {
  return static_cast<size_t>(
      std::count_if(rows_.begin(), rows_.end(),
                    [label](const auto& r) { return r.label == label; }));
}

std::string FormatDouble(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

ScoreTable ParseScoreCsv(std::string_view text) {
  const auto lines = SplitLines(text);
  CheckHeader(lines, kScoreHeader);
  ScoreTable scores;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty() && i + 1 == lines.size()) break;
    const auto fields = SplitFields(lines[i]);
    if (fields.size() != 3)
      Fail(ErrorCode::kMalformedRow,
           "line " + std::to_string(i + 1) + ": expected 3 columns, got " +
               std::to_string(fields.size()));
    ScoreRow row;
    row.sample_id = std::string(fields[0]);
    if (row.sample_id.empty())
      Fail(ErrorCode::kMalformedRow,
           "line " + std::to_string(i + 1) + ": empty sample_id");
    row.label = ParseLabelToken(fields[1]);
    row.score = ParseNumber<double>(fields[2], "score", i + 1);
    scores.Add(std::move(row));
  }
  return scores;
}

std::string FormatScoreCsv(const ScoreTable& scores) {
  std::string out(kScoreHeader);
  out += '\n';
  for (const auto& row : scores.rows()) {
    CheckCsvSafeId(row.sample_id);
    out += row.sample_id;
    out += ',';
    out += LabelToken(row.label);
    out += ',';
    out += FormatDouble(row.score);
    out += '\n';
  }
  return out;
}

ScoreTable ReadScoreTable(const std::string& path) {
  return ParseScoreCsv(ReadFileBytes(path));
}

void WriteScoreTable(const ScoreTable& scores, const std::string& path) {
  WriteFileBytes(path, FormatScoreCsv(scores));
}

std::string_view SelectionRuleToken(SelectionRule rule) {
  switch (rule) {
    case SelectionRule::kThreshold: return "threshold";
    case SelectionRule::kTopFraction: return "top-fraction";
    case SelectionRule::kTopCount: return "top-count";
    case SelectionRule::kRandom: return "random";
    case SelectionRule::kClusterThreshold: return "cluster-threshold";
  }
  return "unknown";
}

SelectionRule ParseSelectionRuleToken(std::string_view token) {
  for (auto rule :
       {SelectionRule::kThreshold, SelectionRule::kTopFraction,
        SelectionRule::kTopCount, SelectionRule::kRandom,
        SelectionRule::kClusterThreshold})
    if (SelectionRuleToken(rule) == token) return rule;
  Fail(ErrorCode::kMalformedRow,
       "unknown selection rule '" + std::string(token) + "'");
}

void SortManifest(SelectionManifest* manifest) {
  std::stable_sort(manifest->rows.begin(), manifest->rows.end(),
                   [](const ManifestRow& a, const ManifestRow& b) {
                     if (a.label != b.label) return a.label < b.label;
                     if (a.distance != b.distance)
                       return a.distance < b.distance;
                     return a.sample_id < b.sample_id;
                   });
}

std::string FormatManifestCsv(const SelectionManifest& manifest) {
  SelectionManifest sorted = manifest;
  SortManifest(&sorted);
  std::string out(kManifestHeader);
  out += '\n';
  for (const auto& row : sorted.rows) {
    CheckCsvSafeId(row.sample_id);
    if (!std::isfinite(row.distance) ||
        (row.rule != SelectionRule::kRandom && row.distance < 0))
      Fail(ErrorCode::kInvariantViolation,
           "manifest row '" + row.sample_id + "' has an invalid distance");
    out += row.sample_id;
    out += ',';
    out += LabelToken(row.label);
    out += ',';
    out += std::to_string(row.cluster_id);
    out += ',';
    out += FormatDouble(row.distance);
    out += ',';
    out += SelectionRuleToken(row.rule);
    out += '\n';
  }
  return out;
}

SelectionManifest ParseManifestCsv(std::string_view text) {
  const auto lines = SplitLines(text);
  CheckHeader(lines, kManifestHeader);
  SelectionManifest manifest;
  std::unordered_map<std::string_view, size_t> seen;
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty() && i + 1 == lines.size()) break;
    const auto fields = SplitFields(lines[i]);
    if (fields.size() != 5)
      Fail(ErrorCode::kMalformedRow,
           "line " + std::to_string(i + 1) + ": expected 5 columns, got " +
               std::to_string(fields.size()));
    if (fields[0].empty())
      Fail(ErrorCode::kMalformedRow,
           "line " + std::to_string(i + 1) + ": empty sample_id");
    if (!seen.emplace(fields[0], i).second)
      Fail(ErrorCode::kDuplicateSampleId,
           "duplicate sample_id '" + std::string(fields[0]) + "'");
    ManifestRow row;
    row.sample_id = std::string(fields[0]);
    row.label = ParseLabelToken(fields[1]);
    row.cluster_id = ParseNumber<int64_t>(fields[2], "cluster_id", i + 1);
    row.distance = ParseNumber<double>(fields[3], "distance", i + 1);
    if (!std::isfinite(row.distance))
      Fail(ErrorCode::kNonFiniteValue,
           "line " + std::to_string(i + 1) + ": distance is not finite");
    row.rule = ParseSelectionRuleToken(fields[4]);
    manifest.rows.push_back(std::move(row));
  }
  return manifest;
}

void WriteManifest(const SelectionManifest& manifest, const std::string& path) {
  WriteFileBytes(path, FormatManifestCsv(manifest));
}

SelectionManifest ReadManifest(const std::string& path) {
  return ParseManifestCsv(ReadFileBytes(path));
}

EmbeddingTable SubsetTable(const EmbeddingTable& table,
                           const SelectionManifest& manifest) {
  std::vector<char> keep(table.size(), 0);
  for (const auto& row : manifest.rows) {
    const EmbeddingRecord* rec = table.Find(row.sample_id);
    if (rec == nullptr)
      Fail(ErrorCode::kInvariantViolation,
           "manifest id '" + row.sample_id + "' is not in the table");
    if (rec->label != row.label)
      Fail(ErrorCode::kInvariantViolation,
           "manifest label for '" + row.sample_id + "' disagrees with table");
    keep[static_cast<size_t>(rec - table.records().data())] = 1;
  }
  EmbeddingTable out(table.dimension());
  for (size_t i = 0; i < table.size(); ++i)
    if (keep[i]) out.Add(table[i]);
  return out;
}

}  // namespace nccoreset
