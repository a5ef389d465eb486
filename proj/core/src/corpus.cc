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

#include "dnsgen/corpus.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "dnsgen/error.h"
#include "dnsgen/p808.h"
#include "dnsgen/rng.h"

namespace dnsgen {

ChapterScore ChapterMos(const std::string &chapter_id,
                        const std::vector<std::vector<int>> &clip_scores) {
  std::vector<int> pooled;
  for (const auto &clip : clip_scores)
    for (int s : clip) {
      if (s < 1 || s > 5)
        throw Error(ErrorCode::kArgument,
                    "chapter " + chapter_id + ": rating " + std::to_string(s) +
                        " outside 1..5");
      pooled.push_back(s);
    }
  if (pooled.empty())
    throw Error(ErrorCode::kArgument, "chapter " + chapter_id + " has no ratings");
  const p808::MeanCi m = p808::MosCi(pooled);
  return ChapterScore{chapter_id, clip_scores, m.mean, m.ci95};
}

QuartileSelection SelectUpperQuartile(const std::vector<ChapterScore> &chapters) {
  if (chapters.empty())
    throw Error(ErrorCode::kArgument, "no chapters to select from");
  std::vector<const ChapterScore *> order;
  for (const auto &c : chapters) order.push_back(&c);
  std::sort(order.begin(), order.end(),
            [](const ChapterScore *a, const ChapterScore *b) {
              if (a->mos != b->mos) return a->mos > b->mos;
              return a->chapter_id < b->chapter_id;
            });
  const size_t keep = (chapters.size() + 3) / 4;
  QuartileSelection out;
  for (size_t i = 0; i < keep; ++i) out.selected_ids.push_back(order[i]->chapter_id);
  out.threshold_mos = order[keep - 1]->mos;
  return out;
}

Manifest PruneSpeakers(const Manifest &manifest, double min_seconds) {
  std::map<std::string, double> totals;
  for (const ClipRecord &r : manifest)
    if (r.kind == ClipKind::kClean) totals[r.speaker_id] += r.duration_s;
  Manifest out;
  for (const ClipRecord &r : manifest)
    if (r.kind != ClipKind::kClean || totals[r.speaker_id] >= min_seconds)
      out.push_back(r);
  return out;
}

std::vector<AudioClip> SegmentClip(const AudioClip &clip, double seg_seconds) {
  if (!(seg_seconds > 0.0))
    throw Error(ErrorCode::kArgument, "segment length must be positive");
  const auto seg = static_cast<size_t>(std::llround(seg_seconds * clip.sample_rate()));
  if (seg == 0)
    throw Error(ErrorCode::kArgument, "segment length rounds to zero samples");
  std::vector<AudioClip> out;
  const auto s = clip.samples();
  for (size_t start = 0; start + seg <= s.size(); start += seg)
    out.emplace_back(std::vector<double>(s.begin() + start, s.begin() + start + seg),
                     clip.sample_rate());
  return out;
}

BalanceResult BalanceClasses(const Manifest &noise, size_t min_per_class,
                             uint64_t seed) {
  const Manifest sorted = SortedById(noise);
  std::map<std::string, std::vector<size_t>> by_label;  // label -> row indices
  for (size_t i = 0; i < sorted.size(); ++i) {
    const std::set<std::string> labels(sorted[i].labels.begin(),
                                       sorted[i].labels.end());
    for (const auto &l : labels) by_label[l].push_back(i);
  }

  std::vector<std::string> visit;
  for (const auto &[label, rows] : by_label) visit.push_back(label);
  std::stable_sort(visit.begin(), visit.end(),
                   [&](const std::string &a, const std::string &b) {
                     return by_label[a].size() < by_label[b].size();
                   });

  std::vector<bool> selected(sorted.size(), false);
  std::map<std::string, size_t> credited;
  auto select = [&](size_t row) {
    selected[row] = true;
    const std::set<std::string> labels(sorted[row].labels.begin(),
                                       sorted[row].labels.end());
    for (const auto &l : labels) ++credited[l];
  };

  for (const std::string &label : visit) {
    const std::vector<size_t> &rows = by_label[label];
    const size_t target = std::min(min_per_class, rows.size());
    if (credited[label] >= target) continue;
    std::vector<size_t> candidates;
    for (size_t r : rows)
      if (!selected[r]) candidates.push_back(r);
    // Stream keyed by label so the draw does not depend on visit history.
    Rng rng(DeriveSeed(seed, HashString(label)));
    rng.Shuffle(candidates);
    for (size_t k = 0; k < candidates.size() && credited[label] < target; ++k)
      select(candidates[k]);
  }

  BalanceResult out;
  for (size_t i = 0; i < sorted.size(); ++i)
    if (selected[i]) out.selected_ids.push_back(sorted[i].clip_id);
  for (const auto &[label, rows] : by_label)
    out.classes.push_back({label, rows.size(), credited[label],
                           rows.size() < min_per_class});
  return out;
}

namespace {

std::string PaddedId(std::string_view prefix, size_t index, size_t width) {
  std::string digits = std::to_string(index);
  if (digits.size() < width) digits.insert(0, width - digits.size(), '0');
  return std::string(prefix) + digits;
}

Manifest OfKind(const Manifest &m, ClipKind kind, std::string_view what) {
  Manifest out;
  for (const ClipRecord &r : SortedById(m))
    if (r.kind == kind) out.push_back(r);
  if (out.empty())
    throw Error(ErrorCode::kArgument, "no " + std::string(what) + " clips in manifest");
  return out;
}

void CheckPositiveDurations(const Manifest &m, std::string_view what) {
  const bool any_positive = std::any_of(m.begin(), m.end(),
      [](const ClipRecord &r) { return r.duration_s > 0.0; });
  if (!any_positive)
    throw Error(ErrorCode::kArgument,
                std::string(what) + " manifest has no clip with positive duration");
}

// Draws clips (with replacement) until their durations, plus gaps, cover
// `duration` seconds. Mixing loops the bed anyway; this keeps beds varied.
std::vector<std::string> DrawClips(Rng &rng, const Manifest &pool,
                                   double duration, double gap_seconds) {
  std::vector<std::string> ids;
  double covered = 0.0;
  constexpr size_t kMaxDraws = 10000;
  while (covered < duration && ids.size() < kMaxDraws) {
    const ClipRecord &r = pool[rng.Below(pool.size())];
    if (!ids.empty()) covered += gap_seconds;
    covered += r.duration_s;
    ids.push_back(r.clip_id);
  }
  return ids;
}

void CheckRange(double lo, double hi, std::string_view what) {
  if (!(lo <= hi) || !std::isfinite(lo) || !std::isfinite(hi))
    throw Error(ErrorCode::kArgument, "invalid " + std::string(what) + " range");
}

}  // namespace

std::vector<MixRecipe> BuildTrainingRecipes(const Manifest &clean,
                                            const Manifest &noise, size_t count,
                                            uint64_t master_seed,
                                            const TrainingRecipeOptions &options) {
  const Manifest clean_pool = OfKind(clean, ClipKind::kClean, "clean");
  const Manifest noise_pool = OfKind(noise, ClipKind::kNoise, "noise");
  CheckPositiveDurations(clean_pool, "clean");
  CheckPositiveDurations(noise_pool, "noise");
  CheckRange(options.snr_min, options.snr_max, "SNR");
  CheckRange(options.rms_min, options.rms_max, "RMS");
  if (!(options.duration > 0.0))
    throw Error(ErrorCode::kArgument, "duration must be positive");

  std::vector<MixRecipe> recipes;
  recipes.reserve(count);
  const double gap_s = options.speech_gap_ms / 1000.0;
  for (size_t i = 0; i < count; ++i) {
    MixRecipe r;
    r.recipe_id = PaddedId("train_", i, 6);
    r.seed = DeriveSeed(master_seed, i);
    Rng rng(r.seed);
    r.target_snr = rng.Uniform(options.snr_min, options.snr_max);
    r.target_rms = rng.Uniform(options.rms_min, options.rms_max);
    r.duration = options.duration;
    r.clean_clip_ids = DrawClips(rng, clean_pool, options.duration, gap_s);
    r.noise_clip_ids = DrawClips(rng, noise_pool, options.duration, 0.0);
    recipes.push_back(std::move(r));
  }
  return recipes;
}

const std::vector<std::string> &DefaultPriorityCategories() {
  static const std::vector<std::string> categories = {
      "fan",           "air conditioner", "typing",         "door shutting",
      "clatter noise", "car",             "munching",       "creaking chair",
      "breathing",     "copy machine",    "baby crying",    "barking"};
  return categories;
}

std::string_view TestSetCategoryName(TestSetCategory category) {
  switch (category) {
    case TestSetCategory::kSyntheticNoReverb: return "synthetic_no_reverb";
    case TestSetCategory::kSyntheticReverb: return "synthetic_reverb";
  }
  return "synthetic_no_reverb";
}

TestPlan BuildTestPlan(const Manifest &clean, const Manifest &noise,
                       const Manifest &rirs, uint64_t master_seed,
                       const TestPlanOptions &options) {
  const Manifest clean_pool = OfKind(clean, ClipKind::kClean, "clean");
  CheckPositiveDurations(clean_pool, "clean");
  CheckRange(options.snr_min, options.snr_max, "SNR");
  CheckRange(options.rms_min, options.rms_max, "RMS");
  if (options.priority_categories.empty())
    throw Error(ErrorCode::kArgument, "no priority categories");
  const std::set<std::string> priority(options.priority_categories.begin(),
                                       options.priority_categories.end());
  if (priority.size() != options.priority_categories.size())
    throw Error(ErrorCode::kArgument, "duplicate priority category");

  Manifest noise_pool;
  for (const ClipRecord &r : SortedById(noise))
    if (r.kind == ClipKind::kNoise) noise_pool.push_back(r);

  // (noise record, is_priority) in plan order.
  std::vector<std::pair<const ClipRecord *, bool>> picks;
  for (const std::string &cat : options.priority_categories) {
    std::vector<const ClipRecord *> candidates;
    for (const ClipRecord &r : noise_pool)
      if (r.category == cat) candidates.push_back(&r);
    if (candidates.size() < options.per_category)
      throw Error(ErrorCode::kPlan,
                  "priority category '" + cat + "' has " +
                      std::to_string(candidates.size()) + " clips, need " +
                      std::to_string(options.per_category));
    Rng rng(DeriveSeed(master_seed, HashString("priority:" + cat)));
    rng.Shuffle(candidates);
    for (size_t k = 0; k < options.per_category; ++k)
      picks.emplace_back(candidates[k], true);
  }
  {
    std::vector<const ClipRecord *> remaining;
    for (const ClipRecord &r : noise_pool)
      if (!priority.count(r.category)) remaining.push_back(&r);
    if (remaining.size() < options.random_count)
      throw Error(ErrorCode::kPlan,
                  "remaining noise classes provide " +
                      std::to_string(remaining.size()) + " clips, need " +
                      std::to_string(options.random_count));
    Rng rng(DeriveSeed(master_seed, HashString("remaining")));
    rng.Shuffle(remaining);
    for (size_t k = 0; k < options.random_count; ++k)
      picks.emplace_back(remaining[k], false);
  }

  const Manifest sorted_rirs = SortedById(rirs);
  std::vector<const ClipRecord *> rir_pool;
  if (options.reverb) {
    for (const ClipRecord &r : sorted_rirs) {
      if (r.kind != ClipKind::kRir) continue;
      const auto rt60 = RirRt60Ms(r);
      if (rt60 && *rt60 >= options.rt60_min_ms && *rt60 <= options.rt60_max_ms)
        rir_pool.push_back(&r);
    }
    if (rir_pool.empty())
      throw Error(ErrorCode::kPlan, "reverb requested but no RIR with RT60 in [" +
                                        std::to_string(options.rt60_min_ms) +
                                        ", " + std::to_string(options.rt60_max_ms) +
                                        "] ms");
  }

  TestPlan plan;
  plan.category = options.reverb ? TestSetCategory::kSyntheticReverb
                                 : TestSetCategory::kSyntheticNoReverb;
  const std::string prefix = options.reverb ? "test_reverb_" : "test_noreverb_";
  const double gap_s = options.speech_gap_ms / 1000.0;
  for (size_t i = 0; i < picks.size(); ++i) {
    const ClipRecord &noise_rec = *picks[i].first;
    MixRecipe r;
    r.recipe_id = PaddedId(prefix, i, 4);
    r.seed = DeriveSeed(master_seed, i);
    Rng rng(r.seed);
    r.target_snr = rng.Uniform(options.snr_min, options.snr_max);
    r.target_rms = rng.Uniform(options.rms_min, options.rms_max);
    r.duration = options.duration;
    r.clean_clip_ids = DrawClips(rng, clean_pool, options.duration, gap_s);
    r.noise_clip_ids = {noise_rec.clip_id};
    if (options.reverb) r.rir_id = rir_pool[rng.Below(rir_pool.size())]->clip_id;
    ++plan.composition[noise_rec.category];
    ++(picks[i].second ? plan.priority_count : plan.random_count);
    plan.recipes.push_back(std::move(r));
  }
  return plan;
}

}  // namespace dnsgen
