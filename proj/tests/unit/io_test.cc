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

#include <fstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "dnsgen/config.h"
#include "dnsgen/delimited.h"
#include "dnsgen/error.h"
#include "dnsgen/manifest.h"
#include "dnsgen/recipe_io.h"
#include "signals.h"

namespace dnsgen {
namespace {

const char kManifest[] =
    "clip_id,path,kind,duration_s,labels,speaker_id,chapter_id,category\n"
    "c1,clean/c1.wav,clean,12.5,,spk1,ch1,\n"
    "n1,/abs/n1.wav,noise,10,fan|typing,,,fan\n"
    "r1,rir/r1.wav,rir,0.6,,,,640\n";

TEST(DelimitedTest, ParseAndFormat) {
  const DelimitedTable t = ParseDelimited("a,b,extra\n1,2,3\n\n4,5,6\n", {"a", "b"});
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.line_numbers, std::vector<size_t>({2, 4}));
  EXPECT_EQ(t.Column("extra"), 2u);
  EXPECT_THROW(ParseDelimited("b,a\n1,2\n", {"a", "b"}), Error);
  EXPECT_THROW(ParseDelimited("a,b\n1\n", {"a", "b"}), Error);
  EXPECT_EQ(FormatDelimited({"x", "y"}, {{"1", "2"}}), "x,y\n1,2\n");
  EXPECT_THROW(FormatDelimited({"x"}, {{"a,b"}}), Error);
}

TEST(DelimitedTest, Numbers) {
  EXPECT_DOUBLE_EQ(ParseDouble("-2.5", "v"), -2.5);
  EXPECT_THROW(ParseDouble("2.5x", "v"), Error);
  EXPECT_THROW(ParseInt("", "v"), Error);
  EXPECT_THROW(ParseUint("-1", "v"), Error);
  for (double v : {0.1, -25.0, 1e-300, 3.141592653589793, 12.345678901234567})
    EXPECT_EQ(ParseDouble(FormatDouble(v), "v"), v);
  EXPECT_EQ(FormatDouble(-25.0), "-25");
}

TEST(ManifestTest, ParseFormatRoundTrip) {
  const Manifest m = ParseManifest(kManifest);
  ASSERT_EQ(m.size(), 3u);
  EXPECT_EQ(m[1].labels, std::vector<std::string>({"fan", "typing"}));
  EXPECT_EQ(m[0].speaker_id, "spk1");
  EXPECT_EQ(m[2].kind, ClipKind::kRir);
  EXPECT_EQ(RirRt60Ms(m[2]), 640.0);
  EXPECT_FALSE(RirRt60Ms(m[0]).has_value());
  EXPECT_EQ(ParseManifest(FormatManifest(m)), m);
  EXPECT_EQ(ResolveClipPath("/data/m.csv", m[0]), "/data/clean/c1.wav");
  EXPECT_EQ(ResolveClipPath("/data/m.csv", m[1]), "/abs/n1.wav");
}

TEST(ManifestTest, RejectsBadRows) {
  const std::string header = "clip_id,path,kind,duration_s,labels,speaker_id,chapter_id,category\n";
  EXPECT_THROW(ParseManifest(header + "a,p,speech,1,,,,\n"), Error);
  EXPECT_THROW(ParseManifest(header + "a,p,noise,1,,,,\n"), Error);
  EXPECT_THROW(ParseManifest(header + "a,p,clean,-1,,,,\n"), Error);
  EXPECT_THROW(ParseManifest(header + "a,p,clean,1,,,,\na,q,clean,1,,,,\n"), Error);
  try {
    ParseManifest(header + "a,p,clean,1,,,,\nb,p,clean,zz,,,,\n", "m.csv");
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kData);
    EXPECT_NE(std::string(e.what()).find("m.csv:3"), std::string::npos) << e.what();
  }
}

TEST(RecipeIoTest, StableLineFormat) {
  MixRecipe r;
  r.recipe_id = "train_000001";
  r.clean_clip_ids = {"c1", "c2"};
  r.noise_clip_ids = {"n1"};
  r.target_snr = 12.5;
  r.target_rms = -25;
  r.duration = 30;
  r.seed = 42;
  EXPECT_EQ(FormatRecipeLine(r),
            "{\"format_version\":1,\"recipe_id\":\"train_000001\","
            "\"clean_clip_ids\":[\"c1\",\"c2\"],\"noise_clip_ids\":[\"n1\"],"
            "\"target_snr\":12.5,\"target_rms\":-25.0,\"duration\":30.0,"
            "\"rir_id\":null,\"seed\":42}");
  r.rir_id = "r1";
  r.target_snr = 0.1 + 0.2;
  r.seed = ~uint64_t{0};
  EXPECT_EQ(ParseRecipeLine(FormatRecipeLine(r)), r);
}

TEST(RecipeIoTest, Errors) {
  MixRecipe r;
  r.recipe_id = "x";
  const std::string line = FormatRecipeLine(r);
  EXPECT_THROW(ParseRecipes(line + "\n" + line + "\n"), Error);
  std::string v2 = line;
  v2.replace(v2.find("\"format_version\":1"), 18, "\"format_version\":2");
  try {
    ParseRecipes(line.substr(0, 0) + v2 + "\n", "plan.jsonl");
    FAIL();
  } catch (const Error &e) {
    EXPECT_NE(std::string(e.what()).find("plan.jsonl:1"), std::string::npos) << e.what();
  }
  EXPECT_THROW(ParseRecipes("{not json}\n"), Error);
}

TEST(ConfigTest, DefaultsMatchChallengeValues) {
  const PipelineConfig c;
  EXPECT_EQ(c.synth.recipe.snr_min, 0);
  EXPECT_EQ(c.synth.recipe.snr_max, 40);
  EXPECT_EQ(c.synth.recipe.rms_min, -35);
  EXPECT_EQ(c.synth.recipe.rms_max, -15);
  EXPECT_EQ(c.synth.recipe.duration, 30);
  EXPECT_EQ(c.testset.snr_max, 25);
  EXPECT_EQ(c.testset.priority_categories.size(), 12u);
  EXPECT_EQ(c.testset.per_category, 15u);
  EXPECT_EQ(c.testset.random_count, 120u);
  EXPECT_EQ(c.p808.groups.group_size, 10u);
  EXPECT_EQ(c.p808.gold_tolerance, 1);
  EXPECT_EQ(c.harness.constraints.lookahead_ms, 40);
  EXPECT_EQ(c.harness.constraints.frame_ms, 20);
  EXPECT_EQ(c.harness.trials, 50u);
}

TEST(ConfigTest, ApplyAndDescribe) {
  PipelineConfig c;
  ApplyConfigText(
      "[general]\nseed = 99\n[paths]\nclean_manifest = m/clean.csv\n"
      "[testset]\npriority_categories = fan|car\nreverb = true\n"
      "[synth]\nspeech_gap_ms = 150\n",
      c, "/base");
  EXPECT_EQ(c.master_seed, 99u);
  EXPECT_EQ(c.paths.clean_manifest, "/base/m/clean.csv");
  EXPECT_EQ(c.testset.priority_categories, std::vector<std::string>({"fan", "car"}));
  EXPECT_TRUE(c.testset.reverb);
  EXPECT_EQ(c.synth.mix.speech_gap_ms, 150);
  // the described config reloads to the same values
  PipelineConfig d;
  ApplyConfigText(DescribeConfig(c), d);
  EXPECT_EQ(DescribeConfig(d), DescribeConfig(c));
  EXPECT_THROW(ApplyConfigText("[synth]\nbogus = 1\n", c), Error);
  EXPECT_THROW(ApplyConfigText("[synth]\ncount = many\n", c), Error);
  EXPECT_THROW(ApplyConfigText("[testset]\nreverb = maybe\n", c), Error);
}

TEST(ConfigTest, LoadFromFile) {
  testing::ScratchDir dir("cfg");
  std::ofstream(dir.path() / "run.ini") << "[paths]\nout = results\n";
  const PipelineConfig c = LoadConfig(dir.path() / "run.ini");
  EXPECT_EQ(c.paths.out, (dir.path() / "results").string());
  EXPECT_THROW(LoadConfig(dir.path() / "missing.ini"), Error);
}

}  // namespace
}  // namespace dnsgen
