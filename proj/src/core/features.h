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

// Audio front-end: 16 kHz mono PCM in, 80-band log-mel spectrogram out.
// 512-point periodic-Hann frames every 160 samples, no centering, power
// spectrum, HTK mel scale over 0-8000 Hz, natural log with a floor.

#ifndef NCCORESET_CORE_FEATURES_H_
#define NCCORESET_CORE_FEATURES_H_

#include <cstdint>
#include <string>
#include <vector>

#include "core/embedding_io.h"

namespace nccoreset {

inline constexpr int kSampleRate = 16000;
inline constexpr int kFftSize = 512;
inline constexpr int kHopLength = 160;
inline constexpr int kNumBins = kFftSize / 2 + 1;  // 257
inline constexpr int kNumMelBands = 80;
inline constexpr double kMelFmax = 8000.0;
inline constexpr double kDefaultClipSeconds = 3.0;
inline constexpr double kLogFloor = 1e-10;

struct AudioClip {
  std::vector<double> samples;
  int sample_rate = kSampleRate;
};

// Row-major matrix.
struct Matrix {
  size_t rows = 0;
  size_t cols = 0;
  std::vector<double> values;

  double& at(size_t r, size_t c) { return values[r * cols + c]; }
  double at(size_t r, size_t c) const { return values[r * cols + c]; }
};

struct MelSpectrogram {
  size_t frames = 0;
  Matrix values;  // kNumMelBands x frames
};

// RIFF/WAVE, PCM 16-bit, mono, 16 kHz only; no resampling. Samples are
// scaled by 1/32768. Throws UnsupportedFormat, CorruptFile, IoFailure.
AudioClip LoadWav(const std::string& path);
AudioClip DecodeWav(std::string_view bytes);
// 16-bit PCM mono writer (clips to [-1, 1)), used by tests and tooling.
std::string EncodeWav(const AudioClip& clip);

// Truncate to / zero-pad up to round(seconds * 16000) samples from the
// start. Throws EmptyClip.
AudioClip FixDuration(const AudioClip& clip,
                      double seconds = kDefaultClipSeconds);

// 1 + floor((n - 512) / 160) for n >= 512, else 0.
size_t FrameCount(size_t num_samples);

// 257 x frames power spectrum. Throws ClipTooShort, UnsupportedFormat.
Matrix StftPower(const AudioClip& clip);

double HzToMel(double hz);
double MelToHz(double mel);

// kNumMelBands x 257 triangular filters on kNumMelBands + 2 points equally
// spaced in mel between 0 and 8000 Hz; peak 1, no area normalization.
const Matrix& MelFilterbank();
// Peak (center) frequency of each filter, in Hz.
std::vector<double> MelCenterFrequencies();

// Throws NegativePower, ShapeMismatch.
MelSpectrogram LogMel(const Matrix& power, double floor_epsilon = kLogFloor);

// FixDuration -> StftPower -> LogMel.
MelSpectrogram ExtractLogMel(const AudioClip& clip,
                             double seconds = kDefaultClipSeconds);

// Reads a CSV manifest with header `path,label,algorithm_id` and returns one
// record per row: sample_id = path as written, embedding = log-mel matrix
// flattened band-major (80 x frames). Relative paths resolve against
// `base_dir` when it is non-empty.
EmbeddingTable ExtractFeatureTable(const std::string& manifest_path,
                                   const std::string& base_dir = "");

}  // namespace nccoreset

#endif  // NCCORESET_CORE_FEATURES_H_
