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

#ifndef DNSGEN_CONFIG_H_
#define DNSGEN_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "dnsgen/corpus.h"
#include "dnsgen/p808.h"
#include "dnsgen/rtcheck.h"
#include "dnsgen/synth.h"

namespace dnsgen {

// Every knob of a pipeline run. Defaults are the challenge values.
struct PipelineConfig {
  uint64_t master_seed = 0;
  size_t jobs = 1;

  struct Paths {
    std::string clean_manifest;
    std::string noise_manifest;
    std::string rir_manifest;
    std::string recipes;
    std::string chapter_ratings;
    std::string speech_probs;
    std::string ratings;
    std::string assignments;
    std::string conditions;
    std::string reference;
    std::string gold_pool;
    std::string trap_pool;
    std::string entries;
    std::string out = "out";
  } paths;

  struct Synth {
    size_t count = 100;
    TrainingRecipeOptions recipe;
    MixOptions mix;
  } synth;

  struct Corpus {
    double min_speaker_seconds = kMinSpeakerSeconds;
    double segment_seconds = 10.0;
    size_t min_per_class = 500;
    double speech_threshold = 0.5;
  } corpus;

  TestPlanOptions testset;

  struct P808 {
    p808::GroupOptions groups;
    int gold_tolerance = 1;
    size_t max_ratings_per_day = 0;  // 0 disables the check
  } p808;

  struct Harness {
    rt::StreamConstraints constraints;
    size_t trials = 50;
    double signal_seconds = 2.0;
    size_t warmup_frames = 10;
    double timing_seconds = 4.0;
  } harness;
};

// INI file with sections [general] [paths] [synth] [corpus] [testset] [p808]
// [harness]. Missing keys keep their defaults; unknown keys throw kArgument.
// Relative paths resolve against the config file's directory.
PipelineConfig LoadConfig(const std::filesystem::path &path);
void ApplyConfigText(const std::string &ini_text, PipelineConfig &config,
                     const std::filesystem::path &base_dir = {});

// Effective configuration in the same INI format, for run logs.
std::string DescribeConfig(const PipelineConfig &config);

}  // namespace dnsgen

#endif  // DNSGEN_CONFIG_H_
