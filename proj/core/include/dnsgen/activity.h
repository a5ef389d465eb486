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

#ifndef DNSGEN_ACTIVITY_H_
#define DNSGEN_ACTIVITY_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "dnsgen/audio.h"

namespace dnsgen {

inline constexpr int kDefaultFrameMs = 20;
inline constexpr double kDefaultActivityThresholdDb = -40.0;

// One flag per non-overlapping frame; a trailing partial frame is dropped.
struct ActivityMask {
  int frame_ms = kDefaultFrameMs;
  std::vector<bool> flags;

  size_t size() const { return flags.size(); }
  size_t CountActive() const;
  friend bool operator==(const ActivityMask &, const ActivityMask &) = default;
};

// Samples per frame at the clip's rate. Throws kArgument unless positive.
size_t FrameSamples(int sample_rate, int frame_ms);

// Per-frame mean square power. Throws kArgument if the clip is shorter than
// one frame.
std::vector<double> FramePowers(const AudioClip &clip, int frame_ms);

// Per-frame level; all-zero frames carry the silent marker.
std::vector<Level> FrameRmsDb(const AudioClip &clip, int frame_ms);

// A frame is active iff its level is within |rel_threshold_db| of the loudest
// frame. The rule is relative, so the mask is invariant to global gain.
ActivityMask ActiveMask(const AudioClip &clip, int frame_ms = kDefaultFrameMs,
                        double rel_threshold_db = kDefaultActivityThresholdDb);

// Frame-wise AND, truncated to the shorter mask.
ActivityMask Intersect(const ActivityMask &a, const ActivityMask &b);

struct SpeechScreenResult {
  std::string clip_id;
  double speech_probability = 0.0;
  bool keep = false;
};

// Noise-clip screening policy; the probability comes from an external
// detector.
SpeechScreenResult ScreenNoiseClip(const std::string &clip_id,
                                   double speech_probability,
                                   double threshold = 0.5);

struct SpeechProbability {
  std::string clip_id;
  double speech_prob = 0.0;
};

// Sidecar with header `clip_id,speech_prob`.
std::vector<SpeechProbability> ReadSpeechSidecar(
    const std::filesystem::path &path);

}  // namespace dnsgen

#endif  // DNSGEN_ACTIVITY_H_
