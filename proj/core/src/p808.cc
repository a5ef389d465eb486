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

#include "dnsgen/p808.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <set>
#include <tuple>

#include <boost/math/distributions/students_t.hpp>

#include "dnsgen/error.h"
#include "dnsgen/rng.h"

namespace dnsgen::p808 {

namespace {

void CheckScore(int score, std::string_view what) {
  if (score < 1 || score > 5)
    throw Error(ErrorCode::kArgument, std::string(what) + " " +
                                          std::to_string(score) +
                                          " outside the 1..5 ACR scale");
}

std::string GroupName(size_t index) {
  std::string digits = std::to_string(index);
  if (digits.size() < 5) digits.insert(0, 5 - digits.size(), '0');
  return "group_" + digits;
}

}  // namespace

std::vector<GroupAssignment> BuildGroups(const std::vector<std::string> &clip_ids,
                                         const GroupOptions &options,
                                         const std::vector<ControlItem> &gold_pool,
                                         const std::vector<ControlItem> &trap_pool,
                                         uint64_t seed) {
  if (gold_pool.empty()) throw Error(ErrorCode::kArgument, "empty gold pool");
  if (trap_pool.empty()) throw Error(ErrorCode::kArgument, "empty trap pool");
  if (options.group_size < 3)
    throw Error(ErrorCode::kArgument, "group_size must be at least 3");
  if (options.ratings_per_clip == 0)
    throw Error(ErrorCode::kArgument, "ratings_per_clip must be positive");
  const std::set<std::string> unique(clip_ids.begin(), clip_ids.end());
  if (unique.size() != clip_ids.size())
    throw Error(ErrorCode::kArgument, "duplicate clip ids");
  for (const auto *pool : {&gold_pool, &trap_pool})
    for (const ControlItem &item : *pool) {
      CheckScore(item.expected, "control item " + item.clip_id + " expected");
      if (unique.count(item.clip_id))
        throw Error(ErrorCode::kArgument,
                    "control item " + item.clip_id + " is also a real clip");
    }
  if (clip_ids.empty()) return {};

  Rng rng(seed);
  const size_t real_slots = options.group_size - 2;

  std::deque<std::string> queue;
  for (size_t r = 0; r < options.ratings_per_clip; ++r) {
    std::vector<std::string> round = clip_ids;
    rng.Shuffle(round);
    queue.insert(queue.end(), round.begin(), round.end());
  }

  std::vector<GroupAssignment> groups;
  while (!queue.empty()) {
    std::vector<std::string> real;
    while (real.size() < real_slots) {
      auto it = std::find_if(queue.begin(), queue.end(), [&](const auto &id) {
        return std::find(real.begin(), real.end(), id) == real.end();
      });
      if (it == queue.end()) break;
      real.push_back(*it);
      queue.erase(it);
    }
    if (real.size() < real_slots) {
      // Pad from covered clips, distinct from this group where possible.
      std::vector<std::string> pad;
      for (const auto &id : clip_ids)
        if (std::find(real.begin(), real.end(), id) == real.end())
          pad.push_back(id);
      if (pad.empty()) pad = clip_ids;
      rng.Shuffle(pad);
      for (size_t i = 0; real.size() < real_slots; ++i)
        real.push_back(pad[i % pad.size()]);
    }

    GroupAssignment g;
    g.group_id = GroupName(groups.size());
    g.gold_position = static_cast<size_t>(rng.Below(options.group_size));
    g.trap_position = static_cast<size_t>(rng.Below(options.group_size - 1));
    if (g.trap_position >= g.gold_position) ++g.trap_position;
    const ControlItem &gold = gold_pool[rng.Below(gold_pool.size())];
    const ControlItem &trap = trap_pool[rng.Below(trap_pool.size())];
    g.gold_expected = gold.expected;
    g.trap_expected = trap.expected;
    g.clip_ids.reserve(options.group_size);
    size_t next_real = 0;
    for (size_t pos = 0; pos < options.group_size; ++pos) {
      if (pos == g.gold_position)
        g.clip_ids.push_back(gold.clip_id);
      else if (pos == g.trap_position)
        g.clip_ids.push_back(trap.clip_id);
      else
        g.clip_ids.push_back(real[next_real++]);
    }
    groups.push_back(std::move(g));
  }
  return groups;
}

std::string_view RejectReasonName(RejectReason reason) {
  switch (reason) {
    case RejectReason::kNone: return "none";
    case RejectReason::kIncomplete: return "incomplete";
    case RejectReason::kGold: return "gold";
    case RejectReason::kTrap: return "trap";
  }
  return "none";
}

Verdict JudgeGroup(std::span<const std::optional<int>> responses,
                   const GroupAssignment &assignment, int gold_tolerance) {
  if (responses.size() != assignment.clip_ids.size() ||
      std::any_of(responses.begin(), responses.end(),
                  [](const auto &r) { return !r.has_value(); }))
    return {false, RejectReason::kIncomplete};
  if (*responses[assignment.trap_position] != assignment.trap_expected)
    return {false, RejectReason::kTrap};
  if (std::abs(*responses[assignment.gold_position] - assignment.gold_expected) >
      gold_tolerance)
    return {false, RejectReason::kGold};
  return {true, RejectReason::kNone};
}

FilterResult FilterRatings(const std::vector<RatingRecord> &records,
                           const std::vector<GroupAssignment> &assignments,
                           int gold_tolerance) {
  std::map<std::string, const GroupAssignment *> by_id;
  for (const GroupAssignment &a : assignments) by_id[a.group_id] = &a;

  struct Session {
    const GroupAssignment *assignment = nullptr;
    std::vector<std::optional<int>> responses;
    std::vector<size_t> record_at;  // record index per position
  };
  std::map<std::pair<std::string, std::string>, Session> sessions;

  for (size_t i = 0; i < records.size(); ++i) {
    const RatingRecord &rec = records[i];
    const std::string row = "rating row " + std::to_string(i + 1);
    const auto it = by_id.find(rec.group_id);
    if (it == by_id.end())
      throw Error(ErrorCode::kData,
                  row + ": unknown group_id '" + rec.group_id + "'");
    try {
      CheckScore(rec.score, "score");
    } catch (const Error &e) {
      throw Error(ErrorCode::kData, row + ": " + e.what());
    }
    const GroupAssignment &a = *it->second;
    Session &s = sessions[{rec.rater_id, rec.group_id}];
    if (!s.assignment) {
      s.assignment = &a;
      s.responses.assign(a.clip_ids.size(), std::nullopt);
      s.record_at.assign(a.clip_ids.size(), SIZE_MAX);
    }
    bool placed = false, present = false;
    for (size_t pos = 0; pos < a.clip_ids.size(); ++pos) {
      if (a.clip_ids[pos] != rec.clip_id) continue;
      present = true;
      if (s.responses[pos]) continue;
      s.responses[pos] = rec.score;
      s.record_at[pos] = i;
      placed = true;
      break;
    }
    if (!present)
      throw Error(ErrorCode::kData, row + ": clip '" + rec.clip_id +
                                        "' is not in group '" + rec.group_id +
                                        "'");
    if (!placed)
      throw Error(ErrorCode::kData, row + ": duplicate answer by rater '" +
                                        rec.rater_id + "' for clip '" +
                                        rec.clip_id + "'");
  }

  FilterResult result;
  std::vector<bool> keep(records.size(), false);
  for (const auto &[key, s] : sessions) {
    const Verdict v = JudgeGroup(s.responses, *s.assignment, gold_tolerance);
    RaterReport &report = result.raters[key.first];
    if (!v.accepted) {
      ++report.groups_rejected;
      result.rejections.push_back({key.first, key.second, v.reason});
      continue;
    }
    ++report.groups_accepted;
    for (size_t pos = 0; pos < s.record_at.size(); ++pos)
      if (!s.assignment->IsControlPosition(pos)) keep[s.record_at[pos]] = true;
  }
  for (size_t i = 0; i < records.size(); ++i)
    if (keep[i]) result.accepted.push_back(records[i]);
  return result;
}

std::vector<RateLimitViolation> RateLimitViolations(
    const std::vector<RatingRecord> &records, size_t max_per_day) {
  std::map<std::pair<std::string, int64_t>, size_t> counts;
  for (const RatingRecord &r : records) {
    int64_t day = r.timestamp / 86400;
    if (r.timestamp < 0 && r.timestamp % 86400 != 0) --day;
    ++counts[{r.rater_id, day}];
  }
  std::vector<RateLimitViolation> out;
  for (const auto &[key, n] : counts)
    if (n > max_per_day) out.push_back({key.first, key.second, n});
  return out;
}

double StudentT975(size_t degrees_of_freedom) {
  if (degrees_of_freedom == 0)
    throw Error(ErrorCode::kArgument, "t quantile needs df >= 1");
  const boost::math::students_t dist(static_cast<double>(degrees_of_freedom));
  return boost::math::quantile(dist, 0.975);
}

MeanCi MosCi(std::span<const int> scores) {
  if (scores.empty()) throw Error(ErrorCode::kArgument, "no scores");
  const double n = static_cast<double>(scores.size());
  double sum = 0.0;
  for (int s : scores) sum += s;
  MeanCi out;
  out.mean = sum / n;
  if (scores.size() < 2) return out;
  double ss = 0.0;
  for (int s : scores) ss += (s - out.mean) * (s - out.mean);
  if (ss == 0.0) return out;
  const double sd = std::sqrt(ss / (n - 1.0));
  out.ci95 = StudentT975(scores.size() - 1) * sd / std::sqrt(n);
  return out;
}

namespace {

std::vector<ScoreSummary> Summarize(
    const std::map<std::string, std::vector<int>> &pooled) {
  std::vector<ScoreSummary> out;
  out.reserve(pooled.size());
  for (const auto &[subject, scores] : pooled) {
    const MeanCi m = MosCi(scores);
    out.push_back({subject, m.mean, m.ci95, scores.size()});
  }
  return out;
}

}  // namespace

std::vector<ScoreSummary> ConditionMos(
    const std::vector<RatingRecord> &accepted,
    const std::map<std::string, std::string> &clip_to_condition) {
  std::map<std::string, std::vector<int>> pooled;
  for (const RatingRecord &r : accepted) {
    const auto it = clip_to_condition.find(r.clip_id);
    if (it == clip_to_condition.end())
      throw Error(ErrorCode::kData,
                  "clip '" + r.clip_id + "' has no condition mapping");
    pooled[it->second].push_back(r.score);
  }
  return Summarize(pooled);
}

std::vector<ScoreSummary> ClipMos(const std::vector<RatingRecord> &accepted) {
  std::map<std::string, std::vector<int>> pooled;
  for (const RatingRecord &r : accepted) pooled[r.clip_id].push_back(r.score);
  return Summarize(pooled);
}

std::vector<double> AverageRanks(std::span<const double> values) {
  std::vector<size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](size_t a, size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  size_t i = 0;
  while (i < order.size()) {
    size_t j = i + 1;
    while (j < order.size() && values[order[j]] == values[order[i]]) ++j;
    // Positions i..j-1 share the mean of ranks i+1..j.
    const double rank = 0.5 * static_cast<double>(i + 1 + j);
    for (size_t k = i; k < j; ++k) ranks[order[k]] = rank;
    i = j;
  }
  return ranks;
}

double Spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size())
    throw Error(ErrorCode::kArgument, "spearman: length mismatch");
  if (x.size() < 2)
    throw Error(ErrorCode::kArgument, "spearman: need at least 2 pairs");
  for (double v : x)
    if (std::isnan(v)) throw Error(ErrorCode::kArgument, "spearman: NaN input");
  for (double v : y)
    if (std::isnan(v)) throw Error(ErrorCode::kArgument, "spearman: NaN input");
  const std::vector<double> rx = AverageRanks(x);
  const std::vector<double> ry = AverageRanks(y);
  const double n = static_cast<double>(x.size());
  const double mean = (n + 1.0) / 2.0;  // average ranks always sum to n(n+1)/2
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (size_t i = 0; i < rx.size(); ++i) {
    const double dx = rx[i] - mean, dy = ry[i] - mean;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0)
    throw Error(ErrorCode::kArgument, "spearman: constant input");
  const double rho = sxy / std::sqrt(sxx * syy);
  return std::clamp(rho, -1.0, 1.0);
}

}  // namespace dnsgen::p808
