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

#ifndef DNSGEN_SYNTH_H_
#define DNSGEN_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dnsgen/activity.h"
#include "dnsgen/audio.h"

namespace dnsgen {

inline constexpr double kDefaultMixDurationSeconds = 30.0;
inline constexpr int kSpeechGapMs = 200;

// One synthesis job.
struct MixRecipe {
  std::string recipe_id;
  std::vector<std::string> clean_clip_ids;
  std::vector<std::string> noise_clip_ids;
  double target_snr = 0.0;   // dB, segmental
  double target_rms = -25.0; // dBFS
  double duration = kDefaultMixDurationSeconds;  // seconds
  std::optional<std::string> rir_id;
  uint64_t seed = 0;

  friend bool operator==(const MixRecipe &, const MixRecipe &) = default;
};

struct RecipeLimits {
  double snr_min = 0.0;
  double snr_max = 40.0;
  double rms_min = -35.0;
  double rms_max = -15.0;
};

// Throws kArgument naming the recipe if any invariant is violated.
void ValidateRecipe(const MixRecipe &recipe, const RecipeLimits &limits);

struct RirMeta {
  std::string rir_id;
  AudioClip impulse;
  double rt60_ms = 0.0;
};

struct MixResult {
  AudioClip mixture;
  AudioClip clean_ref;
  AudioClip noise_ref;
  double noise_gain = 1.0;   // gain applied to the noise bed before leveling
  double level_gain = 1.0;   // global leveling gain
  double achieved_snr = 0.0;
  Level achieved_rms = Level::Silent();
  bool clipped = false;
};

struct MixOptions {
  int frame_ms = kDefaultFrameMs;
  double activity_threshold_db = kDefaultActivityThresholdDb;
  int speech_gap_ms = kSpeechGapMs;
  double headroom_peak = kDefaultHeadroomPeak;
};

// Mean per-sample powers over frames active in both clips.
struct JointPowers {
  double speech = 0.0;
  double noise = 0.0;
  size_t joint_frames = 0;
};

// Throws kArgument on rate mismatch, kUndefinedSnr when no frame is jointly
// active.
JointPowers JointActivePowers(const AudioClip &speech, const AudioClip &noise,
                              int frame_ms = kDefaultFrameMs,
                              double activity_threshold_db =
                                  kDefaultActivityThresholdDb);

double SegmentalSnrDb(const AudioClip &speech, const AudioClip &noise,
                      int frame_ms = kDefaultFrameMs);

// g such that SegmentalSnrDb(speech, g * noise) == target_db.
Gain NoiseGainForSnr(const AudioClip &speech, const AudioClip &noise,
                     double target_db, int frame_ms = kDefaultFrameMs);

// Concatenates sources with gap_ms of silence between consecutive clips,
// cycling from the first source if loop_if_short, and trims to exactly
// round(duration * rate) samples.
AudioClip BuildLongClip(const std::vector<AudioClip> &sources,
                        double duration_seconds, int gap_ms,
                        bool loop_if_short);

// Full linear convolution truncated to the input length, rescaled to the
// input's RMS.
AudioClip ConvolveRir(const AudioClip &clip, const RirMeta &rir);

// Raw linear convolution, length |a| + |b| - 1. FFT-based for large inputs.
std::vector<double> LinearConvolve(std::span<const double> a,
                                   std::span<const double> b);

// Builds speech and noise beds, reverberates speech if a RIR is given, scales
// noise to the target segmental SNR, levels the mixture to target_rms and
// applies the same leveling gain to both references. Errors are rethrown
// with the recipe id as context.
MixResult Mix(const MixRecipe &recipe, const std::vector<AudioClip> &clean,
              const std::vector<AudioClip> &noise,
              const std::optional<RirMeta> &rir = std::nullopt,
              const MixOptions &options = {});

}  // namespace dnsgen

#endif  // DNSGEN_SYNTH_H_
