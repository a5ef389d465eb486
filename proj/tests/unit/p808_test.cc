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

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include <gtest/gtest.h>

#include "dnsgen/error.h"
#include "dnsgen/p808.h"
#include "dnsgen/p808_io.h"
#include "dnsgen/rng.h"
#include "oracles.h"

namespace dnsgen::p808 {
namespace {

std::vector<std::string> Ids(size_t n, const std::string &prefix = "clip") {
  std::vector<std::string> out;
  for (size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

const std::vector<ControlItem> kGold = {{"gold_a", 5}, {"gold_b", 1}};
const std::vector<ControlItem> kTrap = {{"trap_a", 2}, {"trap_b", 4}};

TEST(GroupsTest, SixteenClipsOneRatingEach) {
  const auto groups = BuildGroups(Ids(16), {1, 10}, kGold, kTrap, 3);
  ASSERT_EQ(groups.size(), 2u);
  std::map<std::string, int> seen;
  for (const auto &g : groups) {
    ASSERT_EQ(g.clip_ids.size(), 10u);
    EXPECT_NE(g.gold_position, g.trap_position);
    size_t real = 0;
    for (size_t p = 0; p < g.clip_ids.size(); ++p)
      if (!g.IsControlPosition(p)) {
        ++seen[g.clip_ids[p]];
        ++real;
      }
    EXPECT_EQ(real, 8u);
  }
  EXPECT_EQ(seen.size(), 16u);
}

TEST(GroupsTest, CoverageAndControls) {
  Rng rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    const size_t n = 1 + rng.Below(60);
    const size_t rpc = 1 + rng.Below(4);
    const size_t size = 3 + rng.Below(10);
    const auto groups = BuildGroups(Ids(n), {rpc, size}, kGold, kTrap, trial);
    std::map<std::string, size_t> count;
    for (const auto &g : groups) {
      ASSERT_EQ(g.clip_ids.size(), size);
      ASSERT_NE(g.gold_position, g.trap_position);
      EXPECT_TRUE(g.clip_ids[g.gold_position].starts_with("gold_"));
      EXPECT_TRUE(g.clip_ids[g.trap_position].starts_with("trap_"));
      std::set<std::string> in_group;
      for (size_t p = 0; p < size; ++p) {
        if (g.IsControlPosition(p)) continue;
        if (n >= size - 2)
          EXPECT_TRUE(in_group.insert(g.clip_ids[p]).second) << "clip repeated in a group";
        ++count[g.clip_ids[p]];
      }
    }
    ASSERT_EQ(count.size(), n);
    const bool even = (n * rpc) % (size - 2) == 0;
    for (const auto &[id, c] : count) {
      EXPECT_GE(c, rpc);
      if (even) EXPECT_EQ(c, rpc) << id;
    }
    EXPECT_EQ(BuildGroups(Ids(n), {rpc, size}, kGold, kTrap, trial), groups);
  }
}

TEST(GroupsTest, Errors) {
  EXPECT_THROW(BuildGroups(Ids(5), {}, {}, kTrap, 1), Error);
  EXPECT_THROW(BuildGroups(Ids(5), {}, kGold, {}, 1), Error);
  EXPECT_THROW(BuildGroups(Ids(5), {1, 2}, kGold, kTrap, 1), Error);
  EXPECT_THROW(BuildGroups({"a", "a"}, {}, kGold, kTrap, 1), Error);
  EXPECT_THROW(BuildGroups({"gold_a"}, {}, kGold, kTrap, 1), Error);
}

GroupAssignment Group(int gold_expected, int trap_expected) {
  GroupAssignment g;
  g.group_id = "g";
  g.clip_ids = {"c0", "gold", "c1", "trap"};
  g.gold_position = 1;
  g.trap_position = 3;
  g.gold_expected = gold_expected;
  g.trap_expected = trap_expected;
  return g;
}

TEST(JudgeTest, Examples) {
  using R = std::vector<std::optional<int>>;
  Verdict v = JudgeGroup(R{3, 5, 3, 3}, Group(5, 2));
  EXPECT_FALSE(v.accepted);
  EXPECT_EQ(v.reason, RejectReason::kTrap);
  v = JudgeGroup(R{3, 4, 3, 2}, Group(5, 2));
  EXPECT_TRUE(v.accepted);
  v = JudgeGroup(R{3, 3, 3, 2}, Group(1, 2));
  EXPECT_FALSE(v.accepted);
  EXPECT_EQ(v.reason, RejectReason::kGold);
  v = JudgeGroup(R{3, std::nullopt, 3, 2}, Group(1, 2));
  EXPECT_EQ(v.reason, RejectReason::kIncomplete);
  v = JudgeGroup(R{3, 5}, Group(5, 2));
  EXPECT_EQ(v.reason, RejectReason::kIncomplete);
}

// Five groups of two real clips; rater r1 answers every group, failing the
// trap in g2 and the gold in g4.
struct Fixture {
  std::vector<GroupAssignment> groups;
  std::vector<RatingRecord> records;
};

Fixture MixedFixture() {
  Fixture f;
  for (int k = 0; k < 5; ++k) {
    GroupAssignment g;
    g.group_id = "g" + std::to_string(k);
    const std::string a = "c" + std::to_string(2 * k), b = "c" + std::to_string(2 * k + 1);
    g.clip_ids = {a, "gold", b, "trap"};
    g.gold_position = 1;
    g.trap_position = 3;
    g.gold_expected = 4;
    g.trap_expected = 2;
    f.groups.push_back(g);
    const int trap = k == 2 ? 5 : 2;
    const int gold = k == 4 ? 1 : 4;
    for (auto [clip, score] : std::vector<std::pair<std::string, int>>{
             {a, 3}, {"gold", gold}, {b, 4}, {"trap", trap}})
      f.records.push_back({"r1", clip, g.group_id, score, 1000 + k});
  }
  return f;
}

TEST(FilterTest, MixedCase) {
  const Fixture f = MixedFixture();
  const FilterResult r = FilterRatings(f.records, f.groups);
  // groups 0, 1, 3 survive, two real ratings each
  ASSERT_EQ(r.accepted.size(), 6u);
  std::vector<std::string> clips;
  for (const auto &rec : r.accepted) clips.push_back(rec.clip_id);
  EXPECT_EQ(clips, std::vector<std::string>({"c0", "c1", "c2", "c3", "c6", "c7"}));
  ASSERT_EQ(r.rejections.size(), 2u);
  EXPECT_EQ(r.rejections[0].group_id, "g2");
  EXPECT_EQ(r.rejections[0].reason, RejectReason::kTrap);
  EXPECT_EQ(r.rejections[1].group_id, "g4");
  EXPECT_EQ(r.rejections[1].reason, RejectReason::kGold);
  EXPECT_EQ(r.raters.at("r1").groups_accepted, 3u);
  EXPECT_EQ(r.raters.at("r1").groups_rejected, 2u);
}

TEST(FilterTest, AllPassAndAllFail) {
  Fixture f = MixedFixture();
  for (auto &rec : f.records) {
    if (rec.clip_id == "trap") rec.score = 2;
    if (rec.clip_id == "gold") rec.score = 4;
  }
  FilterResult r = FilterRatings(f.records, f.groups);
  EXPECT_EQ(r.accepted.size(), 10u);
  for (const auto &rec : r.accepted) {
    EXPECT_NE(rec.clip_id, "gold");
    EXPECT_NE(rec.clip_id, "trap");
  }
  for (auto &rec : f.records)
    if (rec.clip_id == "trap") rec.score = 1;
  r = FilterRatings(f.records, f.groups);
  EXPECT_TRUE(r.accepted.empty());
  EXPECT_EQ(r.rejections.size(), 5u);
}

TEST(FilterTest, DataErrorsNameTheRow) {
  Fixture f = MixedFixture();
  f.records[6].group_id = "nope";
  try {
    FilterRatings(f.records, f.groups);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kData);
    EXPECT_NE(std::string(e.what()).find("row 7"), std::string::npos) << e.what();
  }
  f = MixedFixture();
  f.records[0].clip_id = "c9";
  EXPECT_THROW(FilterRatings(f.records, f.groups), Error);
  f = MixedFixture();
  f.records.push_back(f.records[0]);
  EXPECT_THROW(FilterRatings(f.records, f.groups), Error);
}

TEST(FilterTest, IncompleteSessionRejected) {
  Fixture f = MixedFixture();
  f.records.erase(f.records.begin());  // g0 loses a real-clip answer
  const FilterResult r = FilterRatings(f.records, f.groups);
  EXPECT_EQ(r.rejections.front().reason, RejectReason::kIncomplete);
}

TEST(RateLimitTest, PerDay) {
  std::vector<RatingRecord> recs;
  for (int i = 0; i < 5; ++i) recs.push_back({"r", "c", "g", 3, 86400 * 3 + i});
  recs.push_back({"r", "c", "g", 3, 86400 * 4});
  const auto v = RateLimitViolations(recs, 4);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].day, 3);
  EXPECT_EQ(v[0].count, 5u);
  EXPECT_TRUE(RateLimitViolations(recs, 5).empty());
}

TEST(MosCiTest, Examples) {
  const std::vector<int> flat = {4, 4, 4}, spread = {3, 4, 5}, one = {5};
  EXPECT_DOUBLE_EQ(MosCi(flat).mean, 4.0);
  EXPECT_DOUBLE_EQ(MosCi(flat).ci95, 0.0);
  EXPECT_DOUBLE_EQ(MosCi(spread).mean, 4.0);
  EXPECT_NEAR(MosCi(spread).ci95, 2.484, 0.001);
  EXPECT_DOUBLE_EQ(MosCi(one).mean, 5.0);
  EXPECT_DOUBLE_EQ(MosCi(one).ci95, 0.0);
  EXPECT_THROW(MosCi(std::vector<int>{}), Error);
}

TEST(MosCiTest, QuantileMatchesOracle) {
  for (int dof : {1, 2, 3, 5, 10, 29, 100})
    EXPECT_NEAR(StudentT975(dof), testing::OracleT975(dof), 1e-6) << dof;
  EXPECT_NEAR(StudentT975(2), 4.303, 0.001);
}

TEST(MosCiTest, PermutationInvariantAndBounded) {
  Rng rng(2);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> s(1 + rng.Below(40));
    for (int &v : s) v = 1 + static_cast<int>(rng.Below(5));
    const MeanCi a = MosCi(s);
    rng.Shuffle(s);
    const MeanCi b = MosCi(s);
    EXPECT_NEAR(a.mean, b.mean, 1e-12);
    EXPECT_NEAR(a.ci95, b.ci95, 1e-12);
    EXPECT_GE(a.ci95, 0);
    EXPECT_GE(a.mean, 1);
    EXPECT_LE(a.mean, 5);
  }
}

std::vector<RatingRecord> Ratings(std::vector<std::pair<std::string, int>> rows) {
  std::vector<RatingRecord> out;
  for (auto &[clip, score] : rows) out.push_back({"r", clip, "g", score, 0});
  return out;
}

TEST(ConditionTest, Pooling) {
  const std::map<std::string, std::string> cond = {{"a", "X"}, {"b", "X"}, {"c", "Y"}};
  auto s = ConditionMos(Ratings({{"a", 3}, {"a", 4}, {"b", 5}, {"c", 1}}), cond);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].subject_id, "X");
  EXPECT_DOUBLE_EQ(s[0].mos, 4.0);
  EXPECT_EQ(s[0].n, 3u);
  const auto y1 = ConditionMos(Ratings({{"a", 3}, {"c", 1}, {"c", 5}, {"c", 2}}), cond);
  const auto y2 = ConditionMos(Ratings({{"c", 2}, {"c", 5}, {"a", 3}, {"c", 1}}), cond);
  EXPECT_DOUBLE_EQ(y1[0].mos, y2[0].mos);
  EXPECT_DOUBLE_EQ(y1[1].mos, y2[1].mos);
  EXPECT_THROW(ConditionMos(Ratings({{"zzz", 3}}), cond), Error);
  const auto one = ConditionMos(Ratings({{"a", 4}, {"a", 4}, {"b", 4}}), cond);
  EXPECT_DOUBLE_EQ(one[0].mos, 4.0);
}

TEST(SpearmanTest, Examples) {
  const std::vector<double> x = {1, 2, 3}, y = {1, 3, 2};
  EXPECT_DOUBLE_EQ(Spearman(x, y), 0.5);
  const std::vector<double> a = {0.3, 9, -2, 4.5}, up = {1, 50, 0, 7}, down = {4, -1, 9, 0};
  EXPECT_DOUBLE_EQ(Spearman(a, up), 1.0);
  EXPECT_DOUBLE_EQ(Spearman(a, down), -1.0);
  EXPECT_THROW(Spearman(x, std::vector<double>{1, 2}), Error);
  EXPECT_THROW(Spearman(std::vector<double>{1}, std::vector<double>{1}), Error);
  EXPECT_THROW(Spearman(x, std::vector<double>{2, 2, 2}), Error);
}

TEST(SpearmanTest, TiesUseAverageRanks) {
  const std::vector<double> v = {10, 20, 20, 30};
  EXPECT_EQ(AverageRanks(v), std::vector<double>({1, 2.5, 2.5, 4}));
  // Pearson of (1, 2.5, 2.5, 4) with (1, 2, 3, 4)
  const std::vector<double> w = {1, 2, 3, 4};
  EXPECT_NEAR(Spearman(v, w), 4.5 / std::sqrt(4.5 * 5), 1e-12);
}

TEST(SpearmanTest, SymmetricAndMonotoneInvariant) {
  Rng rng(31);
  for (int trial = 0; trial < 300; ++trial) {
    const size_t n = 2 + rng.Below(49);
    std::vector<double> x(n), y(n), fx(n);
    for (size_t i = 0; i < n; ++i) {
      x[i] = rng.Uniform(-5, 5);
      y[i] = rng.Uniform(0, 1);
      fx[i] = std::exp(x[i]) + 3;
    }
    if (n > 2 && trial % 3 == 0) y[1] = y[0];  // exercise ties too
    const double r = Spearman(x, y);
    EXPECT_EQ(r, Spearman(y, x));
    EXPECT_EQ(r, Spearman(fx, y));
    EXPECT_GE(r, -1);
    EXPECT_LE(r, 1);
  }
}

TEST(IoTest, RatingsRoundTripAndErrors) {
  const Fixture f = MixedFixture();
  EXPECT_EQ(ParseRatings(FormatRatings(f.records)), f.records);
  try {
    ParseRatings("rater_id,clip_id,group_id,score,timestamp\nr,c,g,3,0\nr,c,g,7,0\n");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kData);
    EXPECT_NE(std::string(e.what()).find(":3"), std::string::npos) << e.what();
  }
  const auto groups = BuildGroups(Ids(20), {}, kGold, kTrap, 9);
  EXPECT_EQ(ParseAssignments(FormatAssignments(groups)), groups);
}

}  // namespace
}  // namespace dnsgen::p808
