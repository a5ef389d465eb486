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
#include <optional>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "dnsgen/error.h"
#include "dnsgen/rng.h"
#include "dnsgen/rtcheck.h"
#include "oracles.h"
#include "rt_fixtures.h"
#include "signals.h"

namespace dnsgen::rt {
namespace {

using fixtures::FutureAverage;
using fixtures::Passthrough;
using fixtures::Sleeper;

const std::string kFixture = DNSGEN_RT_FIXTURE;

TEST(ConstraintsTest, Budget) {
  StreamConstraints c;
  EXPECT_DOUBLE_EQ(c.budget_ms(), 10.0);
  EXPECT_EQ(c.frame_samples(), 320u);
  EXPECT_EQ(c.lookahead_samples(), 640u);
  EXPECT_TRUE(c.WithinTrackOneLimits());
  c.frame_ms = 50;
  EXPECT_FALSE(c.WithinTrackOneLimits());
}

TEST(AlignTest, FutureAverageAlignsToDefinition) {
  FutureAverage proc(30);  // 480 samples ahead, delay 2 frames
  EXPECT_EQ(DelayFrames(proc), 2u);
  Rng rng(1);
  std::vector<float> x(320 * 20);
  for (float &v : x) v = static_cast<float>(rng.Uniform(-1, 1));
  const auto y = RunAligned(proc, x);
  ASSERT_EQ(y.size(), x.size());
  for (size_t n = 0; n + 480 < x.size(); n += 97) {
    double s = 0;
    for (size_t k = n + 1; k <= n + 480; ++k) s += x[k];
    EXPECT_NEAR(y[n], s / 480, 1e-5) << n;
  }
}

TEST(ProbeTest, CausalFixturesPass) {
  for (int frame_ms : {10, 20}) {
    StreamConstraints c{frame_ms, 40, 16000};
    Passthrough pass(frame_ms);
    EXPECT_EQ(ProbeLookahead(pass, c, {50, 2.0, 1}).flagged(), 0u);
    for (int window : {5, 10, 20, 25, 40}) {
      FutureAverage avg(window, frame_ms);
      EXPECT_EQ(ProbeLookahead(avg, c, {50, 2.0, 2}).flagged(), 0u)
          << "window " << window << " frame " << frame_ms;
    }
  }
}

TEST(ProbeTest, LookaheadBeyondLimitFlaggedAtPredictedFrame) {
  const StreamConstraints c{20, 40, 16000};
  for (int window : {45, 60, 100}) {
    FutureAverage avg(window);
    const ProbeReport r = ProbeLookahead(avg, c, {50, 2.0, 3});
    EXPECT_EQ(r.flagged(), 50u) << window;
    // frame j reads past the boundary once (j+1)F - 1 + W >= (t+1)F + L
    const long reach = (window - 40 - 1) / 20;
    for (const ProbeTrial &t : r.trials) {
      ASSERT_TRUE(t.first_violation.has_value());
      const long expect = std::max<long>(0, static_cast<long>(t.boundary_frame) - reach);
      EXPECT_EQ(static_cast<long>(*t.first_violation), expect);
    }
  }
}

TEST(ProbeTest, FrameMismatchAndShortSignal) {
  Passthrough p(10);
  EXPECT_THROW(ProbeLookahead(p, StreamConstraints{20, 40, 16000}), Error);
  Passthrough q(20);
  EXPECT_THROW(ProbeLookahead(q, StreamConstraints{20, 40, 16000}, {5, 0.05, 1}), Error);
}

TEST(ProbeTest, Deterministic) {
  FutureAverage avg(60);
  const StreamConstraints c;
  const auto a = ProbeLookahead(avg, c, {20, 2.0, 9});
  const auto b = ProbeLookahead(avg, c, {20, 2.0, 9});
  for (size_t i = 0; i < a.trials.size(); ++i) {
    EXPECT_EQ(a.trials[i].boundary_frame, b.trials[i].boundary_frame);
    EXPECT_EQ(a.trials[i].first_violation, b.trials[i].first_violation);
  }
}

TEST(TimingTest, PassthroughAndSleeper) {
  const AudioClip clip = testing::FilteredNoise(2.4, 1);  // 120 frames
  Passthrough fast;
  const TimingReport ok = MeasureBudget(fast, clip, StreamConstraints{});
  EXPECT_TRUE(ok.pass);
  EXPECT_EQ(ok.frames, 110u);
  EXPECT_DOUBLE_EQ(ok.budget_ms, 10.0);
  EXPECT_LE(ok.p50_ms, ok.p95_ms);
  EXPECT_LE(ok.p95_ms, ok.max_ms);
  EXPECT_FALSE(ok.host.empty());
  EXPECT_EQ(ClassifyTrack(StreamConstraints{}, ok), 1);
  StreamConstraints wide{50, 40, 16000};
  EXPECT_EQ(ClassifyTrack(wide, ok), 2);

  Sleeper slow(15);
  const TimingReport bad = MeasureBudget(slow, clip, StreamConstraints{});
  EXPECT_FALSE(bad.pass);
  EXPECT_GE(bad.mean_ms, 15.0);
  EXPECT_EQ(ClassifyTrack(StreamConstraints{}, bad), 2);
  EXPECT_THROW(MeasureBudget(fast, testing::FilteredNoise(2.0, 1), StreamConstraints{}),
               Error);
}

TEST(TimingTest, PercentileNearestRank) {
  EXPECT_EQ(Percentile({5, 1, 4, 2, 3}, 50), 3);
  EXPECT_EQ(Percentile({5, 1, 4, 2, 3}, 100), 5);
  EXPECT_EQ(Percentile({5, 1, 4, 2, 3}, 1), 1);
  EXPECT_THROW(Percentile({}, 50), Error);
}

SubmissionEntry E(const std::string &id, double mos, uint64_t params, double ms = 1.0) {
  return {id, mos, params, ms, 1};
}

std::vector<std::string> Order(const std::vector<SubmissionEntry> &v) {
  std::vector<std::string> out;
  for (const auto &e : v) out.push_back(e.entry_id);
  return out;
}

TEST(RankTest, Examples) {
  EXPECT_EQ(Order(Rank({E("A", 3.50, 5000000), E("B", 3.45, 1000000)})),
            std::vector<std::string>({"B", "A"}));
  EXPECT_EQ(Order(Rank({E("B", 3.30, 1), E("A", 3.50, 5000000)})),
            std::vector<std::string>({"A", "B"}));
  EXPECT_EQ(Order(Rank({E("z", 3.0, 7), E("a", 3.0, 7), E("m", 3.0, 7)})),
            std::vector<std::string>({"a", "m", "z"}));
  auto mixed = std::vector<SubmissionEntry>{E("a", 3, 1), E("b", 3, 1)};
  mixed[1].track = 2;
  EXPECT_THROW(Rank(mixed), Error);
  EXPECT_THROW(Rank({E("a", 5.5, 1)}), Error);
}

TEST(RankTest, ExactTenthIsNotANearTie) {
  // 3.3 - 3.2 is 0.0999999... in binary; decimal intent is a full 0.1 gap
  EXPECT_EQ(Order(Rank({E("hi", 3.3, 9), E("lo", 3.2, 1)})),
            std::vector<std::string>({"hi", "lo"}));
}

TEST(RankTest, AgreesWithFixpointOracle) {
  Rng rng(5);
  for (int set = 0; set < 40; ++set) {
    std::vector<SubmissionEntry> entries;
    const size_t n = 2 + rng.Below(4);
    for (size_t i = 0; i < n; ++i)
      entries.push_back(E(std::string(1, static_cast<char>('a' + i)),
                          3.0 + 0.05 * static_cast<double>(rng.Below(8)),
                          1 + rng.Below(4), static_cast<double>(rng.Below(3))));
    const auto terminal = testing::OracleRankFixpoints(entries);
    std::sort(entries.begin(), entries.end(),
              [](const auto &a, const auto &b) { return a.entry_id < b.entry_id; });
    std::optional<std::vector<std::string>> first;
    do {
      const auto got = Order(Rank(entries));
      EXPECT_TRUE(terminal.count(got));
      if (!first) first = got;
      EXPECT_EQ(got, *first);
    } while (std::next_permutation(entries.begin(), entries.end(),
                                   [](const auto &a, const auto &b) {
                                     return a.entry_id < b.entry_id;
                                   }));
  }
}

TEST(RankTest, WideGapsArePlainSort) {
  Rng rng(6);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<SubmissionEntry> entries;
    std::vector<int> slots = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
    rng.Shuffle(slots);
    for (int i = 0; i < 6; ++i)
      entries.push_back(E("e" + std::to_string(i), 1.0 + 0.4 * slots[i], rng.Below(100)));
    auto expect = entries;
    std::sort(expect.begin(), expect.end(),
              [](const auto &a, const auto &b) { return a.mos > b.mos; });
    EXPECT_EQ(Rank(entries), expect);
  }
}

TEST(EntriesTest, RoundTrip) {
  const std::vector<SubmissionEntry> v = {E("a", 3.5, 5000000, 2.5), E("b", 3.45, 1, 0)};
  EXPECT_EQ(ParseEntries(FormatEntries(v)), v);
  EXPECT_THROW(ParseEntries("entry_id,mos,param_count,per_frame_ms,track\na,x,1,1,1\n"),
               Error);
}

TEST(SubprocessTest, HeaderParsing) {
  int f = 0, l = 0;
  ParseProcessorHeader("frame_ms=20 lookahead_ms=40", &f, &l);
  EXPECT_EQ(f, 20);
  EXPECT_EQ(l, 40);
  EXPECT_THROW(ParseProcessorHeader("frame=20", &f, &l), Error);
  EXPECT_THROW(ParseProcessorHeader("frame_ms=0 lookahead_ms=0", &f, &l), Error);
  EXPECT_THROW(ParseProcessorHeader("frame_ms=20 lookahead_ms=x", &f, &l), Error);
}

TEST(SubprocessTest, MatchesInProcessFixtures) {
  const StreamConstraints c;
  SubprocessProcessor pass(kFixture + " passthrough");
  EXPECT_EQ(pass.frame_ms(), 20);
  EXPECT_EQ(pass.lookahead_ms(), 0);
  EXPECT_TRUE(ProbeLookahead(pass, c, {5, 1.0, 1}).pass());

  SubprocessProcessor la60(kFixture + " lookahead 60");
  FutureAverage local(60);
  EXPECT_EQ(la60.lookahead_ms(), 60);
  const auto remote = ProbeLookahead(la60, c, {5, 1.0, 4});
  const auto inproc = ProbeLookahead(local, c, {5, 1.0, 4});
  for (size_t i = 0; i < 5; ++i)
    EXPECT_EQ(remote.trials[i].first_violation, inproc.trials[i].first_violation);

  Rng rng(3);
  std::vector<float> x(320 * 10);
  for (float &v : x) v = static_cast<float>(rng.Uniform(-1, 1));
  SubprocessProcessor la40(kFixture + " lookahead 40");
  FutureAverage local40(40);
  EXPECT_EQ(RunAligned(la40, x), RunAligned(local40, x));
}

TEST(SubprocessTest, FailuresAreHarnessErrors) {
  auto code = [](auto &&fn) {
    try {
      fn();
    } catch (const Error &e) {
      return e.code();
    }
    return ErrorCode::kArgument;
  };
  EXPECT_EQ(code([] { SubprocessProcessor p("exit 3"); }), ErrorCode::kHarness);
  EXPECT_EQ(code([] { SubprocessProcessor p("echo hello"); }), ErrorCode::kHarness);
  EXPECT_EQ(code([] {
              // valid header, then dies on the first frame
              SubprocessProcessor p("echo 'frame_ms=20 lookahead_ms=0'; read x", 16000, 500);
              std::vector<float> in(320), out(320);
              p.Process(in, out);
            }),
            ErrorCode::kHarness);
}

}  // namespace
}  // namespace dnsgen::rt
