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

#include "core/features.h"

#include <fftw3.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <memory>
#include <mutex>
#include <numbers>

#include "core/error.h"

namespace nccoreset {

namespace {

uint32_t ReadLe(std::string_view b, size_t at, int width) {
  uint32_t v = 0;
  for (int i = 0; i < width; ++i)
    v |= static_cast<uint32_t>(static_cast<unsigned char>(b[at + i]))
         << (8 * i);
  return v;
}

void AppendLe(std::string* out, uint32_t v, int width) {
  for (int i = 0; i < width; ++i)
    out->push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

// One r2c plan shared by all callers. Planning is not thread-safe in FFTW,
// execution with fftw_malloc'd buffers is.
class RealFft {
 public:
  static const RealFft& Get() {
    static const RealFft instance;
    return instance;
  }

  void Execute(double* in, fftw_complex* out) const {
    fftw_execute_dft_r2c(plan_, in, out);
  }

 private:
  RealFft() {
    double* in = fftw_alloc_real(kFftSize);
    fftw_complex* out = fftw_alloc_complex(kNumBins);
    plan_ = fftw_plan_dft_r2c_1d(kFftSize, in, out, FFTW_ESTIMATE);
    fftw_free(in);
    fftw_free(out);
  }
  ~RealFft() { fftw_destroy_plan(plan_); }

  fftw_plan plan_;
};

struct FftwFree {
  void operator()(void* p) const { fftw_free(p); }
};

std::vector<double> PeriodicHann() {
  std::vector<double> w(kFftSize);
  for (int n = 0; n < kFftSize; ++n)
    w[n] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * n / kFftSize);
  return w;
}

Matrix BuildFilterbank() {
  const double mel_max = HzToMel(kMelFmax);
  std::vector<double> edges(kNumMelBands + 2);
  for (int i = 0; i < kNumMelBands + 2; ++i)
    edges[i] = MelToHz(mel_max * i / (kNumMelBands + 1));
  Matrix fb{kNumMelBands, kNumBins,
            std::vector<double>(static_cast<size_t>(kNumMelBands) * kNumBins)};
  for (int m = 0; m < kNumMelBands; ++m) {
    const double lo = edges[m], center = edges[m + 1], hi = edges[m + 2];
    for (int j = 0; j < kNumBins; ++j) {
      const double f = static_cast<double>(j) * kSampleRate / kFftSize;
      double w = 0.0;
      if (f >= lo && f <= center)
        w = (f - lo) / (center - lo);
      else if (f > center && f <= hi)
        w = (hi - f) / (hi - center);
      fb.at(m, j) = w;
    }
  }
  return fb;
}

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.back() == '\r' || s.back() == ' ')) s.remove_suffix(1);
  return s;
}

}  // namespace

AudioClip DecodeWav(std::string_view b) {
  if (b.size() < 12 || b.substr(0, 4) != "RIFF" || b.substr(8, 4) != "WAVE")
    Fail(ErrorCode::kCorruptFile, "not a RIFF/WAVE file");
  size_t pos = 12;
  bool have_fmt = false;
  while (pos + 8 <= b.size()) {
    const std::string_view id = b.substr(pos, 4);
    const uint32_t size = ReadLe(b, pos + 4, 4);
    const size_t body = pos + 8;
    if (size > b.size() - body)
      Fail(ErrorCode::kCorruptFile,
           "chunk '" + std::string(id) + "' runs past end of file");
    if (id == "fmt ") {
      if (size < 16) Fail(ErrorCode::kCorruptFile, "fmt chunk too short");
      const uint32_t format = ReadLe(b, body, 2);
      const uint32_t channels = ReadLe(b, body + 2, 2);
      const uint32_t rate = ReadLe(b, body + 4, 4);
      const uint32_t bits = ReadLe(b, body + 14, 2);
      if (format != 1)
        Fail(ErrorCode::kUnsupportedFormat,
             "audio format " + std::to_string(format) + " is not PCM");
      if (channels != 1)
        Fail(ErrorCode::kUnsupportedFormat,
             std::to_string(channels) + " channels; only mono is supported");
      if (rate != static_cast<uint32_t>(kSampleRate))
        Fail(ErrorCode::kUnsupportedFormat,
             "sample rate " + std::to_string(rate) +
                 " Hz; only 16000 Hz is supported");
      if (bits != 16)
        Fail(ErrorCode::kUnsupportedFormat,
             std::to_string(bits) + "-bit samples; only 16-bit is supported");
      have_fmt = true;
    } else if (id == "data") {
      if (!have_fmt)
        Fail(ErrorCode::kCorruptFile, "data chunk before fmt chunk");
      if (size % 2 != 0)
        Fail(ErrorCode::kCorruptFile, "odd byte count in 16-bit data chunk");
      AudioClip clip;
      clip.sample_rate = kSampleRate;
      clip.samples.resize(size / 2);
      for (size_t i = 0; i < clip.samples.size(); ++i) {
        const auto raw = static_cast<int16_t>(ReadLe(b, body + 2 * i, 2));
        clip.samples[i] = static_cast<double>(raw) / 32768.0;
      }
      return clip;
    }
    pos = body + size + (size & 1);
  }
  Fail(ErrorCode::kCorruptFile, have_fmt ? "no data chunk" : "no fmt chunk");
}

AudioClip LoadWav(const std::string& path) {
  return DecodeWav(ReadFileBytes(path));
}

std::string EncodeWav(const AudioClip& clip) {
  const auto data_bytes = static_cast<uint32_t>(clip.samples.size() * 2);
  std::string out = "RIFF";
  AppendLe(&out, 36 + data_bytes, 4);
  out += "WAVEfmt ";
  AppendLe(&out, 16, 4);
  AppendLe(&out, 1, 2);  // PCM
  AppendLe(&out, 1, 2);  // mono
  AppendLe(&out, static_cast<uint32_t>(clip.sample_rate), 4);
  AppendLe(&out, static_cast<uint32_t>(clip.sample_rate) * 2, 4);
  AppendLe(&out, 2, 2);
  AppendLe(&out, 16, 2);
  out += "data";
  AppendLe(&out, data_bytes, 4);
  for (double s : clip.samples) {
    const double scaled = std::floor(s * 32768.0 + 0.5);
    const auto v = static_cast<int16_t>(std::clamp(scaled, -32768.0, 32767.0));
    AppendLe(&out, static_cast<uint16_t>(v), 2);
  }
  return out;
}

AudioClip FixDuration(const AudioClip& clip, double seconds) {
  if (clip.samples.empty()) Fail(ErrorCode::kEmptyClip, "clip has no samples");
  if (!(seconds > 0.0))
    Fail(ErrorCode::kInvalidConfig, "duration must be positive");
  const auto target =
      static_cast<size_t>(std::llround(seconds * clip.sample_rate));
  AudioClip out;
  out.sample_rate = clip.sample_rate;
  out.samples.assign(target, 0.0);
  const size_t copy = std::min(target, clip.samples.size());
  std::copy_n(clip.samples.begin(), copy, out.samples.begin());
  return out;
}

size_t FrameCount(size_t num_samples) {
  if (num_samples < static_cast<size_t>(kFftSize)) return 0;
  return 1 + (num_samples - kFftSize) / kHopLength;
}

Matrix StftPower(const AudioClip& clip) {
  if (clip.sample_rate != kSampleRate)
    Fail(ErrorCode::kUnsupportedFormat,
         "sample rate " + std::to_string(clip.sample_rate) + " Hz");
  const size_t frames = FrameCount(clip.samples.size());
  if (frames == 0)
    Fail(ErrorCode::kClipTooShort,
         "clip has " + std::to_string(clip.samples.size()) +
             " samples, need at least 512");
  static const std::vector<double> window = PeriodicHann();
  const RealFft& fft = RealFft::Get();
  std::unique_ptr<double, FftwFree> in(fftw_alloc_real(kFftSize));
  std::unique_ptr<fftw_complex, FftwFree> out(fftw_alloc_complex(kNumBins));

  Matrix power{kNumBins, frames, std::vector<double>(kNumBins * frames)};
  for (size_t t = 0; t < frames; ++t) {
    const double* frame = clip.samples.data() + t * kHopLength;
    for (int n = 0; n < kFftSize; ++n) in.get()[n] = frame[n] * window[n];
    fft.Execute(in.get(), out.get());
    for (int k = 0; k < kNumBins; ++k) {
      const double re = out.get()[k][0], im = out.get()[k][1];
      power.at(k, t) = re * re + im * im;
    }
  }
  return power;
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) {
  return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0);
}

const Matrix& MelFilterbank() {
  static const Matrix fb = BuildFilterbank();
  return fb;
}

std::vector<double> MelCenterFrequencies() {
  const double mel_max = HzToMel(kMelFmax);
  std::vector<double> centers(kNumMelBands);
  for (int m = 0; m < kNumMelBands; ++m)
    centers[m] = MelToHz(mel_max * (m + 1) / (kNumMelBands + 1));
  return centers;
}

MelSpectrogram LogMel(const Matrix& power, double floor_epsilon) {
  if (power.rows != static_cast<size_t>(kNumBins) ||
      power.values.size() != power.rows * power.cols || power.cols == 0)
    Fail(ErrorCode::kShapeMismatch,
         "power matrix is " + std::to_string(power.rows) + " x " +
             std::to_string(power.cols) + ", expected 257 x frames");
  for (double v : power.values)
    if (v < 0.0 || std::isnan(v))
      Fail(ErrorCode::kNegativePower, "power spectrum has a negative value");
  if (!(floor_epsilon > 0.0))
    Fail(ErrorCode::kInvalidConfig, "log floor must be positive");
  const Matrix& fb = MelFilterbank();
  MelSpectrogram mel;
  mel.frames = power.cols;
  mel.values = Matrix{kNumMelBands, power.cols,
                      std::vector<double>(kNumMelBands * power.cols)};
  for (int m = 0; m < kNumMelBands; ++m) {
    for (size_t t = 0; t < power.cols; ++t) {
      double energy = 0.0;
      for (int k = 0; k < kNumBins; ++k) energy += fb.at(m, k) * power.at(k, t);
      mel.values.at(m, t) = std::log(std::max(energy, floor_epsilon));
    }
  }
  return mel;
}

MelSpectrogram ExtractLogMel(const AudioClip& clip, double seconds) {
  return LogMel(StftPower(FixDuration(clip, seconds)));
}

EmbeddingTable ExtractFeatureTable(const std::string& manifest_path,
                                   const std::string& base_dir) {
  const std::string text = ReadFileBytes(manifest_path);
  std::vector<std::string_view> lines;
  {
    std::string_view rest = text;
    while (!rest.empty()) {
      const size_t nl = rest.find('\n');
      lines.push_back(Trim(rest.substr(0, nl)));
      if (nl == std::string_view::npos) break;
      rest.remove_prefix(nl + 1);
    }
  }
  if (lines.empty() || lines[0] != "path,label,algorithm_id")
    Fail(ErrorCode::kMalformedRow,
         "expected header 'path,label,algorithm_id'");

  const size_t frames =
      FrameCount(static_cast<size_t>(std::llround(kDefaultClipSeconds *
                                                  kSampleRate)));
  EmbeddingTable table(static_cast<uint32_t>(kNumMelBands * frames));
  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest = lines[i];
    for (size_t c; (c = rest.find(',')) != std::string_view::npos;) {
      fields.push_back(rest.substr(0, c));
      rest.remove_prefix(c + 1);
    }
    fields.push_back(rest);
    if (fields.size() != 3 || fields[0].empty())
      Fail(ErrorCode::kMalformedRow,
           "line " + std::to_string(i + 1) + ": expected path,label,algorithm_id");
    unsigned algorithm = 0;
    auto [ptr, ec] = std::from_chars(fields[2].data(),
                                     fields[2].data() + fields[2].size(),
                                     algorithm);
    if (ec != std::errc() || ptr != fields[2].data() + fields[2].size() ||
        algorithm > UINT16_MAX)
      Fail(ErrorCode::kMalformedRow,
           "line " + std::to_string(i + 1) + ": bad algorithm_id");

    std::filesystem::path path(fields[0]);
    if (path.is_relative() && !base_dir.empty())
      path = std::filesystem::path(base_dir) / path;
    const MelSpectrogram mel = ExtractLogMel(LoadWav(path.string()));

    EmbeddingRecord rec;
    rec.sample_id = std::string(fields[0]);
    rec.label = ParseLabelToken(fields[1]);
    rec.algorithm_id = static_cast<uint16_t>(algorithm);
    rec.embedding.assign(mel.values.values.begin(), mel.values.values.end());
    table.Add(std::move(rec));
  }
  return table;
}

}  // namespace nccoreset
