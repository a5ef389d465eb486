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

#ifndef DNSGEN_CORPUS_H_
#define DNSGEN_CORPUS_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dnsgen/audio.h"
#include "dnsgen/manifest.h"
#include "dnsgen/synth.h"

namespace dnsgen {

// Clean speech curation --------------------------------------------------

struct ChapterScore {
  std::string chapter_id;
  std::vector<std::vector<int>> clip_scores;
  double mos = 0.0;   // grand mean over every rating of the chapter
  double ci95 = 0.0;  // t-interval half width over the pooled ratings
};

// Throws kArgument if there are no ratings or a rating is outside 1..5.
ChapterScore ChapterMos(const std::string &chapter_id,
                        const std::vector<std::vector<int>> &clip_scores);

struct QuartileSelection {
  std::vector<std::string> selected_ids;  // best first
  double threshold_mos = 0.0;             // lowest MOS that made the cut
};

// Top ceil(n/4) chapters by MOS; ties go to the smaller chapter_id.
QuartileSelection SelectUpperQuartile(const std::vector<ChapterScore> &chapters);

inline constexpr double kMinSpeakerSeconds = 900.0;

// Drops every clean clip of a speaker whose total duration is below
// min_seconds. Non-clean rows pass through.
Manifest PruneSpeakers(const Manifest &manifest,
                       double min_seconds = kMinSpeakerSeconds);

// Consecutive non-overlapping segments; a trailing remainder is dropped.
std::vector<AudioClip> SegmentClip(const AudioClip &clip,
                                   double seg_seconds = 10.0);

// Noise balancing ----------------------------------------------------------

struct ClassBalance {
  std::string label;
  size_t available = 0;
  size_t selected = 0;
  bool under_quota = false;  // available < quota
};

struct BalanceResult {
  std::vector<std::string> selected_ids;  // sorted
  std::vector<ClassBalance> classes;      // sorted by label
};

// Greedy scarcity-first cover. Classes are visited in ascending order of
// availability (then label); each class below quota receives seeded-random
// unselected clips bearing its label until it holds min(quota, available).
// A selected clip credits every label it carries.
BalanceResult BalanceClasses(const Manifest &noise, size_t min_per_class,
                             uint64_t seed);

// Recipe generation ----------------------------------------------------------

struct TrainingRecipeOptions {
  double snr_min = 0.0;
  double snr_max = 40.0;
  double rms_min = -35.0;
  double rms_max = -15.0;
  double duration = kDefaultMixDurationSeconds;
  int speech_gap_ms = kSpeechGapMs;
};

// Recipe i draws from a stream seeded by DeriveSeed(master_seed, i).
std::vector<MixRecipe> BuildTrainingRecipes(const Manifest &clean,
                                            const Manifest &noise,
                                            size_t count, uint64_t master_seed,
                                            const TrainingRecipeOptions &options = {});

const std::vector<std::string> &DefaultPriorityCategories();

enum class TestSetCategory { kSyntheticNoReverb, kSyntheticReverb };

std::string_view TestSetCategoryName(TestSetCategory category);

struct TestPlanOptions {
  std::vector<std::string> priority_categories = DefaultPriorityCategories();
  size_t per_category = 15;
  size_t random_count = 120;
  double snr_min = 0.0;
  double snr_max = 25.0;
  double rms_min = -35.0;
  double rms_max = -15.0;
  double duration = 10.0;
  int speech_gap_ms = kSpeechGapMs;
  double rt60_min_ms = 300.0;
  double rt60_max_ms = 1300.0;
  bool reverb = false;
};

struct TestPlan {
  TestSetCategory category = TestSetCategory::kSyntheticNoReverb;
  std::vector<MixRecipe> recipes;
  // Noise category -> number of recipes using it.
  std::map<std::string, size_t> composition;
  size_t priority_count = 0;
  size_t random_count = 0;
};

// Throws kPlan naming the offending category when a priority category has
// fewer than per_category clips, when the remaining pool is too small, or
// when reverb is requested without an eligible RIR.
TestPlan BuildTestPlan(const Manifest &clean, const Manifest &noise,
                       const Manifest &rirs, uint64_t master_seed,
                       const TestPlanOptions &options = {});

}  // namespace dnsgen

#endif  // DNSGEN_CORPUS_H_
