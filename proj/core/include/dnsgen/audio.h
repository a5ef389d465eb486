// Copyright 2026  The dnsgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef DNSGEN_AUDIO_H_
#define DNSGEN_AUDIO_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <vector>

namespace dnsgen {

inline constexpr int kCanonicalSampleRate = 16000;
inline constexpr double kDefaultHeadroomPeak = 0.99;

// Mono sample buffer. Samples are nominally in [-1, 1]; only steps that
// declare clip-safety (normalization) guarantee it.
class AudioClip {
 public:
  AudioClip() = default;
  AudioClip(std::vector<double> samples, int sample_rate);

  static AudioClip Silence(size_t num_samples, int sample_rate) {
    return AudioClip(std::vector<double>(num_samples, 0.0), sample_rate);
  }

  int sample_rate() const { return sample_rate_; }
  size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  double duration_seconds() const {
    return static_cast<double>(samples_.size()) / sample_rate_;
  }

  std::span<const double> samples() const { return samples_; }
  std::span<double> mutable_samples() { return samples_; }
  double operator[](size_t i) const { return samples_[i]; }

  double Peak() const;
  bool IsSilent() const;

  friend bool operator==(const AudioClip &, const AudioClip &) = default;

 private:
  std::vector<double> samples_;
  int sample_rate_ = kCanonicalSampleRate;
};

// Level in dBFS (amplitude 1.0 = 0 dBFS). An all-zero signal has no finite
// level; it is represented by the silent marker.
class Level {
 public:
  static Level Silent() { return Level(); }
  static Level Dbfs(double value) { return Level(value); }

  bool silent() const { return !value_.has_value(); }
  // Throws kArgument on the silent marker.
  double dbfs() const;

  friend bool operator==(const Level &, const Level &) = default;

 private:
  Level() = default;
  explicit Level(double v) : value_(v) {}
  std::optional<double> value_;
};

// Linear amplitude multiplier, >= 0.
struct Gain {
  double value = 1.0;

  static Gain FromDb(double db);
  // Throws kArgument for value == 0.
  double db() const;
};

// Power (mean square) to level. Zero power maps to the silent marker.
Level PowerToLevel(double mean_square);
double MeanSquare(std::span<const double> samples);

// 16-bit PCM mono RIFF/WAVE only. Integer sample v maps to v / 32768.
AudioClip ReadWav(const std::filesystem::path &path);
AudioClip ParseWav(std::span<const uint8_t> bytes);

// Round half away from zero, saturate at [-32768, 32767].
void WriteWav(const AudioClip &clip, const std::filesystem::path &path);
std::vector<uint8_t> EncodeWav(const AudioClip &clip);
int16_t QuantizeSample(double sample);

Level RmsDbfs(const AudioClip &clip);

// No clamping; clipping is the caller's explicit step.
AudioClip ApplyGain(const AudioClip &clip, Gain gain);

struct NormalizeResult {
  AudioClip clip;
  Gain gain;
  bool clipped = false;  // gain was reduced to respect headroom_peak
};

// Scales to the target RMS unless the resulting peak would exceed
// headroom_peak, in which case the gain is reduced so peak == headroom_peak.
NormalizeResult NormalizeToDbfs(const AudioClip &clip, Level target,
                                double headroom_peak = kDefaultHeadroomPeak);

struct LevelingGain {
  Gain gain;
  bool clipped = false;
};

// The gain NormalizeToDbfs applies, without producing the clip.
LevelingGain SolveLevelingGain(std::span<const double> samples, Level target,
                               double headroom_peak = kDefaultHeadroomPeak);

}  // namespace dnsgen

#endif  // DNSGEN_AUDIO_H_
