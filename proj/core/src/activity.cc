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

#include "dnsgen/activity.h"

#include <algorithm>
#include <cmath>

#include "dnsgen/delimited.h"
#include "dnsgen/error.h"

namespace dnsgen {

size_t ActivityMask::CountActive() const {
  return static_cast<size_t>(std::count(flags.begin(), flags.end(), true));
}

size_t FrameSamples(int sample_rate, int frame_ms) {
  if (frame_ms <= 0)
    throw Error(ErrorCode::kArgument, "frame_ms must be positive");
  if (sample_rate <= 0)
    throw Error(ErrorCode::kArgument, "sample rate must be positive");
  const long long n = static_cast<long long>(sample_rate) * frame_ms / 1000;
  if (n <= 0)
    throw Error(ErrorCode::kArgument, "frame of " + std::to_string(frame_ms) +
                                          " ms holds no samples");
  return static_cast<size_t>(n);
}

std::vector<double> FramePowers(const AudioClip &clip, int frame_ms) {
  const size_t frame = FrameSamples(clip.sample_rate(), frame_ms);
  const size_t num_frames = clip.size() / frame;
  if (num_frames == 0)
    throw Error(ErrorCode::kArgument,
                "clip of " + std::to_string(clip.size()) +
                    " samples is shorter than one " + std::to_string(frame_ms) +
                    " ms frame");
  std::vector<double> powers(num_frames);
  const auto samples = clip.samples();
  for (size_t f = 0; f < num_frames; ++f)
    powers[f] = MeanSquare(samples.subspan(f * frame, frame));
  return powers;
}

std::vector<Level> FrameRmsDb(const AudioClip &clip, int frame_ms) {
  std::vector<Level> levels;
  for (double p : FramePowers(clip, frame_ms)) levels.push_back(PowerToLevel(p));
  return levels;
}

ActivityMask ActiveMask(const AudioClip &clip, int frame_ms,
                        double rel_threshold_db) {
  const std::vector<double> powers = FramePowers(clip, frame_ms);
  ActivityMask mask;
  mask.frame_ms = frame_ms;
  mask.flags.assign(powers.size(), false);
  const double max_power = *std::max_element(powers.begin(), powers.end());
  if (max_power <= 0.0) return mask;
  // Compared in the power domain: p >= max * 10^(thr/10).
  const double floor = max_power * std::pow(10.0, rel_threshold_db / 10.0);
  for (size_t f = 0; f < powers.size(); ++f)
    mask.flags[f] = powers[f] > 0.0 && powers[f] >= floor;
  return mask;
}

ActivityMask Intersect(const ActivityMask &a, const ActivityMask &b) {
  if (a.frame_ms != b.frame_ms)
    throw Error(ErrorCode::kArgument,
                "cannot intersect masks with frame_ms " +
                    std::to_string(a.frame_ms) + " and " +
                    std::to_string(b.frame_ms));
  ActivityMask out;
  out.frame_ms = a.frame_ms;
  const size_t n = std::min(a.size(), b.size());
  out.flags.resize(n);
  for (size_t i = 0; i < n; ++i) out.flags[i] = a.flags[i] && b.flags[i];
  return out;
}

SpeechScreenResult ScreenNoiseClip(const std::string &clip_id,
                                   double speech_probability,
                                   double threshold) {
  if (!(speech_probability >= 0.0 && speech_probability <= 1.0))
    throw Error(ErrorCode::kArgument,
                "speech probability for " + clip_id + " outside [0, 1]");
  return SpeechScreenResult{clip_id, speech_probability,
                            speech_probability < threshold};
}

std::vector<SpeechProbability> ReadSpeechSidecar(
    const std::filesystem::path &path) {
  const DelimitedTable table = ReadDelimited(path, {"clip_id", "speech_prob"});
  std::vector<SpeechProbability> out;
  out.reserve(table.rows.size());
  for (size_t i = 0; i < table.rows.size(); ++i) {
    const auto &row = table.rows[i];
    const std::string where =
        path.string() + ":" + std::to_string(table.line_numbers[i]);
    out.push_back({row[0], ParseDouble(row[1], where + " speech_prob")});
  }
  return out;
}

}  // namespace dnsgen
