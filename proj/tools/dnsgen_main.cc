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

// dnsgen: batch front end for corpus synthesis, test-set planning, rating
// aggregation and real-time checks. Precedence: defaults < --config < flags.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "commands.h"
#include "dnsgen/config.h"
#include "dnsgen/error.h"

namespace {

struct GlobalFlags {
  std::string config_path;
  uint64_t seed = 0;
  bool seed_set = false;
  std::string out;
  bool force = false;
  size_t jobs = 0;
};

std::string Absolute(const std::string &p) {
  return p.empty() ? p : std::filesystem::absolute(p).string();
}

}  // namespace

int main(int argc, char *argv[]) {
  using namespace dnsgen;
  CLI::App app{"Deterministic noisy-speech corpus and evaluation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--config", g.config_path, "INI configuration file")
      ->check(CLI::ExistingFile);
  app.add_option_function<uint64_t>(
      "--seed", [&g](uint64_t s) { g.seed = s; g.seed_set = true; },
      "Master seed (overrides the config)");
  app.add_option("--out", g.out, "Output directory");
  app.add_flag("--force", g.force, "Overwrite existing outputs");
  app.add_option("--jobs", g.jobs, "Worker threads")->check(CLI::PositiveNumber);

  // Path overrides; each lands in the matching [paths] key.
  struct PathFlag {
    const char *flag;
    std::string value;
    std::string PipelineConfig::Paths::*member;
  };
  std::vector<PathFlag> path_flags = {
      {"--clean-manifest", {}, &PipelineConfig::Paths::clean_manifest},
      {"--noise-manifest", {}, &PipelineConfig::Paths::noise_manifest},
      {"--rir-manifest", {}, &PipelineConfig::Paths::rir_manifest},
      {"--recipes", {}, &PipelineConfig::Paths::recipes},
      {"--chapter-ratings", {}, &PipelineConfig::Paths::chapter_ratings},
      {"--speech-probs", {}, &PipelineConfig::Paths::speech_probs},
      {"--ratings", {}, &PipelineConfig::Paths::ratings},
      {"--assignments", {}, &PipelineConfig::Paths::assignments},
      {"--conditions", {}, &PipelineConfig::Paths::conditions},
      {"--reference", {}, &PipelineConfig::Paths::reference},
      {"--gold-pool", {}, &PipelineConfig::Paths::gold_pool},
      {"--trap-pool", {}, &PipelineConfig::Paths::trap_pool},
      {"--entries", {}, &PipelineConfig::Paths::entries},
  };
  for (PathFlag &f : path_flags) {
    std::string key = f.flag + 2;
    std::replace(key.begin(), key.end(), '-', '_');
    app.add_option(f.flag, f.value, "Overrides [paths] " + key);
  }

  CLI::App *synth = app.add_subcommand("synthesize", "Mix recipes into WAV triples");
  size_t count = 0;
  synth->add_option("--count", count, "Training recipes to generate when no --recipes");

  CLI::App *testset = app.add_subcommand("build-testset", "Plan a synthetic test set");
  bool synth_now = false, reverb = false;
  testset->add_flag("--synthesize", synth_now, "Also render the planned recipes");
  testset->add_flag("--reverb", reverb, "Build the reverberant variant");

  CLI::App *filter = app.add_subcommand(
      "filter-corpus", "Chapter quartile selection, speaker pruning, segmentation");
  CLI::App *balance =
      app.add_subcommand("balance-noise", "Speech screening and class balancing");
  CLI::App *groups = app.add_subcommand("build-groups", "Assign clips to rating groups");
  std::string clips_path;
  groups->add_option("--clips", clips_path, "Delimited file with a clip_id column")
      ->required();
  CLI::App *aggregate =
      app.add_subcommand("aggregate-ratings", "Filter ratings and compute MOS");
  CLI::App *verify = app.add_subcommand("verify-rt", "Causality and timing checks");
  std::string processor;
  verify->add_option("processor", processor, "Shell command speaking the frame protocol")
      ->required();
  CLI::App *rank = app.add_subcommand("rank", "Rank submissions per track");

  CLI11_PARSE(app, argc, argv);

  CLI::App *cmd = app.get_subcommands().front();
  const std::string name = cmd->get_name();
  try {
    PipelineConfig config;
    if (!g.config_path.empty()) config = LoadConfig(g.config_path);
    if (g.seed_set) config.master_seed = g.seed;
    if (!g.out.empty()) config.paths.out = g.out;
    if (g.jobs > 0) config.jobs = g.jobs;
    for (const PathFlag &f : path_flags)
      if (!f.value.empty()) config.paths.*f.member = Absolute(f.value);
    if (count > 0) config.synth.count = count;
    if (reverb) config.testset.reverb = true;

    std::cerr << "LOG (dnsgen " << name << ") effective configuration:\n"
              << DescribeConfig(config);

    const cli::RunOptions run{g.force};
    if (cmd == synth) return cli::Synthesize(config, run);
    if (cmd == testset) return cli::BuildTestset(config, run, synth_now);
    if (cmd == filter) return cli::FilterCorpus(config, run);
    if (cmd == balance) return cli::BalanceNoise(config, run);
    if (cmd == groups) return cli::BuildGroups(config, run, clips_path);
    if (cmd == aggregate) return cli::AggregateRatings(config, run);
    if (cmd == verify) return cli::VerifyRt(config, run, processor);
    if (cmd == rank) return cli::RankEntries(config, run);
  } catch (const Error &e) {
    std::cerr << "ERROR (dnsgen " << name << ") [" << ErrorCodeName(e.code()) << "] "
              << e.what() << '\n';
    return cli::kExitFailed;
  } catch (const std::exception &e) {
    std::cerr << "ERROR (dnsgen " << name << ") " << e.what() << '\n';
    return cli::kExitFailed;
  }
  return cli::kExitFailed;
}
