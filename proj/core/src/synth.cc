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

#include "dnsgen/synth.h"

#include <cmath>
#include <string>

#include "dnsgen/error.h"

namespace dnsgen {

void ValidateRecipe(const MixRecipe &recipe, const RecipeLimits &limits) {
  const std::string id = "recipe " + recipe.recipe_id;
  if (recipe.recipe_id.empty())
    throw Error(ErrorCode::kArgument, "recipe without recipe_id");
  if (recipe.clean_clip_ids.empty())
    throw Error(ErrorCode::kArgument, id + ": no clean clips");
  if (recipe.noise_clip_ids.empty())
    throw Error(ErrorCode::kArgument, id + ": no noise clips");
  if (!std::isfinite(recipe.target_snr) || recipe.target_snr < limits.snr_min ||
      recipe.target_snr > limits.snr_max)
    throw Error(ErrorCode::kArgument,
                id + ": target_snr " + std::to_string(recipe.target_snr) +
                    " outside [" + std::to_string(limits.snr_min) + ", " +
                    std::to_string(limits.snr_max) + "]");
  if (!std::isfinite(recipe.target_rms) || recipe.target_rms < limits.rms_min ||
      recipe.target_rms > limits.rms_max)
    throw Error(ErrorCode::kArgument,
                id + ": target_rms " + std::to_string(recipe.target_rms) +
                    " outside [" + std::to_string(limits.rms_min) + ", " +
                    std::to_string(limits.rms_max) + "]");
  if (!(recipe.duration > 0.0) || !std::isfinite(recipe.duration))
    throw Error(ErrorCode::kArgument, id + ": duration must be positive");
}

JointPowers JointActivePowers(const AudioClip &speech, const AudioClip &noise,
                              int frame_ms, double activity_threshold_db) {
  if (speech.sample_rate() != noise.sample_rate())
    throw Error(ErrorCode::kArgument,
                "sample rate mismatch: speech " +
                    std::to_string(speech.sample_rate()) + " Hz, noise " +
                    std::to_string(noise.sample_rate()) + " Hz");
  const ActivityMask joint =
      Intersect(ActiveMask(speech, frame_ms, activity_threshold_db),
                ActiveMask(noise, frame_ms, activity_threshold_db));
  const size_t frame = FrameSamples(speech.sample_rate(), frame_ms);
  const auto s = speech.samples();
  const auto n = noise.samples();
  JointPowers out;
  double ps = 0.0, pn = 0.0;
  for (size_t f = 0; f < joint.size(); ++f) {
    if (!joint.flags[f]) continue;
    ++out.joint_frames;
    for (size_t i = f * frame; i < (f + 1) * frame; ++i) {
      ps += s[i] * s[i];
      pn += n[i] * n[i];
    }
  }
  if (out.joint_frames == 0)
    throw Error(ErrorCode::kUndefinedSnr,
                "no frame where both speech and noise are active");
  const double count = static_cast<double>(out.joint_frames * frame);
  out.speech = ps / count;
  out.noise = pn / count;
  return out;
}

double SegmentalSnrDb(const AudioClip &speech, const AudioClip &noise,
                      int frame_ms) {
  const JointPowers p = JointActivePowers(speech, noise, frame_ms);
  return 10.0 * std::log10(p.speech / p.noise);
}

Gain NoiseGainForSnr(const AudioClip &speech, const AudioClip &noise,
                     double target_db, int frame_ms) {
  if (!std::isfinite(target_db))
    throw Error(ErrorCode::kArgument, "target SNR must be finite");
  const JointPowers p = JointActivePowers(speech, noise, frame_ms);
  return Gain{std::sqrt(p.speech / (p.noise * std::pow(10.0, target_db / 10.0)))};
}

AudioClip BuildLongClip(const std::vector<AudioClip> &sources,
                        double duration_seconds, int gap_ms,
                        bool loop_if_short) {
  if (sources.empty())
    throw Error(ErrorCode::kArgument, "no source clips to concatenate");
  if (!(duration_seconds > 0.0))
    throw Error(ErrorCode::kArgument, "duration must be positive");
  if (gap_ms < 0) throw Error(ErrorCode::kArgument, "gap_ms must be >= 0");
  const int rate = sources.front().sample_rate();
  size_t material = 0;
  for (const AudioClip &c : sources) {
    if (c.sample_rate() != rate)
      throw Error(ErrorCode::kArgument, "source clips differ in sample rate");
    material += c.size();
  }
  const auto total = static_cast<size_t>(std::llround(duration_seconds * rate));
  const size_t gap = static_cast<size_t>(rate) * static_cast<size_t>(gap_ms) / 1000;
  if (material == 0)
    throw Error(ErrorCode::kMaterial, "all source clips are empty");

  std::vector<double> out;
  out.reserve(total);
  bool first = true;
  while (true) {
    for (const AudioClip &c : sources) {
      if (!first) out.resize(std::min(total, out.size() + gap), 0.0);
      first = false;
      const size_t take = std::min(total - out.size(), c.size());
      out.insert(out.end(), c.samples().begin(), c.samples().begin() + take);
      if (out.size() == total) return AudioClip(std::move(out), rate);
    }
    if (!loop_if_short)
      throw Error(ErrorCode::kMaterial,
                  "sources provide " + std::to_string(out.size()) +
                      " samples, need " + std::to_string(total));
  }
}

AudioClip ConvolveRir(const AudioClip &clip, const RirMeta &rir) {
  if (rir.impulse.empty())
    throw Error(ErrorCode::kArgument, "RIR " + rir.rir_id + " is empty");
  if (rir.impulse.sample_rate() != clip.sample_rate())
    throw Error(ErrorCode::kArgument,
                "RIR " + rir.rir_id + " sample rate " +
                    std::to_string(rir.impulse.sample_rate()) +
                    " Hz does not match clip rate " +
                    std::to_string(clip.sample_rate()) + " Hz");
  if (clip.empty()) return clip;
  const double in_power = MeanSquare(clip.samples());
  if (in_power == 0.0) return clip;
  std::vector<double> wet = LinearConvolve(clip.samples(), rir.impulse.samples());
  wet.resize(clip.size());
  const double out_power = MeanSquare(wet);
  if (out_power == 0.0)
    throw Error(ErrorCode::kArgument,
                "RIR " + rir.rir_id + " produces a silent output");
  const double scale = std::sqrt(in_power / out_power);
  for (double &s : wet) s *= scale;
  return AudioClip(std::move(wet), clip.sample_rate());
}

namespace {

MixResult MixUnchecked(const MixRecipe &recipe,
                       const std::vector<AudioClip> &clean,
                       const std::vector<AudioClip> &noise,
                       const std::optional<RirMeta> &rir,
                       const MixOptions &options) {
  if (clean.empty()) throw Error(ErrorCode::kArgument, "no clean clips");
  if (noise.empty()) throw Error(ErrorCode::kArgument, "no noise clips");
  if (!(recipe.duration > 0.0))
    throw Error(ErrorCode::kArgument, "duration must be positive");
  for (const auto *group : {&clean, &noise})
    for (const AudioClip &c : *group)
      if (c.sample_rate() != kCanonicalSampleRate)
        throw Error(ErrorCode::kArgument,
                    "clip at " + std::to_string(c.sample_rate()) +
                        " Hz; only " + std::to_string(kCanonicalSampleRate) +
                        " Hz is accepted");

  AudioClip speech =
      BuildLongClip(clean, recipe.duration, options.speech_gap_ms, true);
  const AudioClip noise_bed = BuildLongClip(noise, recipe.duration, 0, true);
  if (rir) speech = ConvolveRir(speech, *rir);

  const JointPowers p = JointActivePowers(speech, noise_bed, options.frame_ms,
                                          options.activity_threshold_db);
  if (!std::isfinite(recipe.target_snr))
    throw Error(ErrorCode::kArgument, "target SNR must be finite");
  const double noise_gain =
      std::sqrt(p.speech / (p.noise * std::pow(10.0, recipe.target_snr / 10.0)));

  const size_t n = speech.size();
  const auto s = speech.samples();
  const auto v = noise_bed.samples();
  std::vector<double> scaled_noise(n), raw(n);
  for (size_t i = 0; i < n; ++i) {
    scaled_noise[i] = noise_gain * v[i];
    raw[i] = s[i] + scaled_noise[i];
  }
  const LevelingGain level = SolveLevelingGain(
      raw, Level::Dbfs(recipe.target_rms), options.headroom_peak);
  const double g = level.gain.value;

  std::vector<double> clean_ref(n), noise_ref(n), mixture(n);
  for (size_t i = 0; i < n; ++i) {
    clean_ref[i] = g * s[i];
    noise_ref[i] = g * scaled_noise[i];
    mixture[i] = clean_ref[i] + noise_ref[i];
  }

  MixResult result;
  result.clean_ref = AudioClip(std::move(clean_ref), speech.sample_rate());
  result.noise_ref = AudioClip(std::move(noise_ref), speech.sample_rate());
  result.mixture = AudioClip(std::move(mixture), speech.sample_rate());
  result.noise_gain = noise_gain;
  result.level_gain = g;
  result.clipped = level.clipped;
  const JointPowers achieved =
      JointActivePowers(result.clean_ref, result.noise_ref, options.frame_ms,
                        options.activity_threshold_db);
  result.achieved_snr = 10.0 * std::log10(achieved.speech / achieved.noise);
  result.achieved_rms = RmsDbfs(result.mixture);
  return result;
}

}  // namespace

MixResult Mix(const MixRecipe &recipe, const std::vector<AudioClip> &clean,
              const std::vector<AudioClip> &noise,
              const std::optional<RirMeta> &rir, const MixOptions &options) {
  try {
    return MixUnchecked(recipe, clean, noise, rir, options);
  } catch (const Error &e) {
    throw e.WithContext("recipe " + recipe.recipe_id);
  }
}

}  // namespace dnsgen
