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

#ifndef DNSGEN_P808_H_
#define DNSGEN_P808_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dnsgen::p808 {

// One ACR rating (1..5) from one rater for one clip within a group.
struct RatingRecord {
  std::string rater_id;
  std::string clip_id;
  std::string group_id;
  int score = 0;
  int64_t timestamp = 0;  // seconds since epoch

  friend bool operator==(const RatingRecord &, const RatingRecord &) = default;
};

// Stimulus with a known answer: a gold clip (expected MOS) or a trapping
// question (expected option).
struct ControlItem {
  std::string clip_id;
  int expected = 0;
};

struct GroupAssignment {
  std::string group_id;
  // Full presentation order, gold and trap included.
  std::vector<std::string> clip_ids;
  size_t gold_position = 0;
  size_t trap_position = 0;
  int gold_expected = 0;
  int trap_expected = 0;

  bool IsControlPosition(size_t pos) const {
    return pos == gold_position || pos == trap_position;
  }
  friend bool operator==(const GroupAssignment &,
                         const GroupAssignment &) = default;
};

struct GroupOptions {
  size_t ratings_per_clip = 3;
  size_t group_size = 10;
};

// Each group holds group_size - 2 real clips plus one gold and one trap at
// seeded positions. Every clip is scheduled ratings_per_clip times; when the
// last group comes up short it is padded with already-covered clips.
// Throws kArgument on empty pools, group_size < 3, duplicate clip ids, or a
// control id that is also a real clip.
std::vector<GroupAssignment> BuildGroups(const std::vector<std::string> &clip_ids,
                                         const GroupOptions &options,
                                         const std::vector<ControlItem> &gold_pool,
                                         const std::vector<ControlItem> &trap_pool,
                                         uint64_t seed);

enum class RejectReason { kNone, kIncomplete, kGold, kTrap };

std::string_view RejectReasonName(RejectReason reason);

struct Verdict {
  bool accepted = false;
  RejectReason reason = RejectReason::kNone;
};

// Accept iff the gold answer is within gold_tolerance of its expected score
// and the trap answer matches exactly. Missing answers reject as incomplete.
Verdict JudgeGroup(std::span<const std::optional<int>> responses,
                   const GroupAssignment &assignment, int gold_tolerance = 1);

struct GroupRejection {
  std::string rater_id;
  std::string group_id;
  RejectReason reason = RejectReason::kNone;
};

struct RaterReport {
  size_t groups_accepted = 0;
  size_t groups_rejected = 0;
};

struct FilterResult {
  // Real-clip ratings from accepted groups, in input order. Gold and trap
  // answers are never included.
  std::vector<RatingRecord> accepted;
  std::vector<GroupRejection> rejections;
  std::map<std::string, RaterReport> raters;
};

// Reassembles each (rater, group) session from the records and judges it.
// Throws kData naming the row on an unknown group, a clip not in its group,
// or a duplicate answer.
FilterResult FilterRatings(const std::vector<RatingRecord> &records,
                           const std::vector<GroupAssignment> &assignments,
                           int gold_tolerance = 1);

struct RateLimitViolation {
  std::string rater_id;
  int64_t day = 0;  // timestamp / 86400
  size_t count = 0;
};

// Raters exceeding max_per_day ratings within a UTC day.
std::vector<RateLimitViolation> RateLimitViolations(
    const std::vector<RatingRecord> &records, size_t max_per_day);

struct MeanCi {
  double mean = 0.0;
  double ci95 = 0.0;
};

// Mean and t-based 95% half width; ci95 is 0 for n == 1 or zero variance.
// Throws kArgument when empty.
MeanCi MosCi(std::span<const int> scores);

// Two-sided 97.5% Student t quantile.
double StudentT975(size_t degrees_of_freedom);

struct ScoreSummary {
  std::string subject_id;
  double mos = 0.0;
  double ci95 = 0.0;
  size_t n = 0;
};

// Pools accepted ratings per condition. Throws kData for an unmapped clip.
std::vector<ScoreSummary> ConditionMos(
    const std::vector<RatingRecord> &accepted,
    const std::map<std::string, std::string> &clip_to_condition);

std::vector<ScoreSummary> ClipMos(const std::vector<RatingRecord> &accepted);

// 1-based ranks, ties get the average of the ranks they span.
std::vector<double> AverageRanks(std::span<const double> values);

// Pearson correlation of average ranks. Throws kArgument on length mismatch,
// n < 2, or a constant input.
double Spearman(std::span<const double> x, std::span<const double> y);

}  // namespace dnsgen::p808

#endif  // DNSGEN_P808_H_
