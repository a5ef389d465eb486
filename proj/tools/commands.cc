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

#include "commands.h"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <iostream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "dnsgen/activity.h"
#include "dnsgen/audio.h"
#include "dnsgen/corpus.h"
#include "dnsgen/delimited.h"
#include "dnsgen/error.h"
#include "dnsgen/manifest.h"
#include "dnsgen/p808.h"
#include "dnsgen/p808_io.h"
#include "dnsgen/recipe_io.h"
#include "dnsgen/rng.h"
#include "dnsgen/rtcheck.h"
#include "dnsgen/synth.h"

namespace dnsgen::cli {

namespace fs = std::filesystem;

namespace {

std::mutex log_mutex;

void Log(std::string_view cmd, const std::string &msg) {
  std::lock_guard<std::mutex> lock(log_mutex);
  std::cerr << "LOG (dnsgen " << cmd << ") " << msg << '\n';
}

void Warn(std::string_view cmd, const std::string &msg) {
  std::lock_guard<std::mutex> lock(log_mutex);
  std::cerr << "WARNING (dnsgen " << cmd << ") " << msg << '\n';
}

void Fail(std::string_view cmd, const std::string &msg) {
  std::lock_guard<std::mutex> lock(log_mutex);
  std::cerr << "ERROR (dnsgen " << cmd << ") " << msg << '\n';
}

const std::string &Require(const std::string &value, std::string_view what) {
  if (value.empty())
    throw Error(ErrorCode::kArgument,
                "missing " + std::string(what) + " (set it in the config or on the command line)");
  return value;
}

// Creates out_dir and refuses to clobber existing outputs without --force.
void PrepareOutputs(const fs::path &out_dir, const std::vector<fs::path> &files,
                    const RunOptions &run) {
  fs::create_directories(out_dir);
  if (run.force) return;
  for (const fs::path &f : files)
    if (fs::exists(f))
      throw Error(ErrorCode::kIo,
                  f.string() + " already exists; pass --force to overwrite");
}

// Resolves clip ids from a manifest to readable file paths.
class ClipIndex {
 public:
  ClipIndex() = default;
  explicit ClipIndex(const fs::path &manifest_path)
      : manifest_path_(manifest_path) {
    for (ClipRecord &r : ReadManifest(manifest_path)) {
      const std::string id = r.clip_id;
      records_.emplace(id, std::move(r));
    }
  }

  const ClipRecord &Get(const std::string &id) const {
    const auto it = records_.find(id);
    if (it == records_.end())
      throw Error(ErrorCode::kData, "clip '" + id + "' not in manifest " +
                                        manifest_path_.string());
    return it->second;
  }

  AudioClip Load(const std::string &id) const {
    return ReadWav(ResolveClipPath(manifest_path_, Get(id)));
  }

  bool empty() const { return records_.empty(); }

 private:
  fs::path manifest_path_;
  std::map<std::string, ClipRecord> records_;
};

struct SynthRow {
  std::vector<std::string> fields;
};

int SynthesizeRecipes(std::string_view cmd, const std::vector<MixRecipe> &recipes,
                      const PipelineConfig &config, const fs::path &out_dir,
                      const RunOptions &run, const RecipeLimits &limits) {
  if (recipes.empty()) throw Error(ErrorCode::kArgument, "no recipes to synthesize");
  const ClipIndex clean(Require(config.paths.clean_manifest, "clean manifest"));
  const ClipIndex noise(Require(config.paths.noise_manifest, "noise manifest"));
  const bool any_rir = std::any_of(recipes.begin(), recipes.end(),
                                   [](const MixRecipe &r) { return r.rir_id.has_value(); });
  std::optional<ClipIndex> rirs;
  if (any_rir) rirs.emplace(Require(config.paths.rir_manifest, "RIR manifest"));

  std::vector<fs::path> outputs;
  for (const MixRecipe &r : recipes)
    for (const char *suffix : {".noisy.wav", ".clean.wav", ".noise.wav"})
      outputs.push_back(out_dir / (r.recipe_id + suffix));
  const fs::path results_path = out_dir / "results.csv";
  outputs.push_back(results_path);
  PrepareOutputs(out_dir, outputs, run);

  std::vector<std::optional<SynthRow>> rows(recipes.size());
  std::vector<std::string> errors(recipes.size());
  std::atomic<size_t> next{0};

  auto worker = [&] {
    for (size_t i = next++; i < recipes.size(); i = next++) {
      const MixRecipe &recipe = recipes[i];
      const std::string base = recipe.recipe_id;
      const fs::path noisy = out_dir / (base + ".noisy.wav");
      const fs::path clean_path = out_dir / (base + ".clean.wav");
      const fs::path noise_path = out_dir / (base + ".noise.wav");
      try {
        ValidateRecipe(recipe, limits);
        std::vector<AudioClip> clean_clips, noise_clips;
        for (const auto &id : recipe.clean_clip_ids) clean_clips.push_back(clean.Load(id));
        for (const auto &id : recipe.noise_clip_ids) noise_clips.push_back(noise.Load(id));
        std::optional<RirMeta> rir;
        if (recipe.rir_id) {
          const ClipRecord &rec = rirs->Get(*recipe.rir_id);
          rir = RirMeta{rec.clip_id, rirs->Load(rec.clip_id), RirRt60Ms(rec).value_or(0.0)};
        }
        const MixResult result =
            Mix(recipe, clean_clips, noise_clips, rir, config.synth.mix);
        WriteWav(result.mixture, noisy);
        WriteWav(result.clean_ref, clean_path);
        WriteWav(result.noise_ref, noise_path);
        rows[i] = SynthRow{{base, noisy.filename().string(), clean_path.filename().string(),
                            noise_path.filename().string(), FormatDouble(recipe.target_snr),
                            FormatDouble(result.achieved_snr), FormatDouble(recipe.target_rms),
                            FormatDouble(result.achieved_rms.dbfs()),
                            result.clipped ? "1" : "0"}};
      } catch (const std::exception &e) {
        std::error_code ec;
        for (const fs::path &p : {noisy, clean_path, noise_path}) fs::remove(p, ec);
        errors[i] = e.what();
      }
    }
  };

  const size_t jobs = std::clamp<size_t>(config.jobs, 1, recipes.size());
  {
    std::vector<std::jthread> pool;
    for (size_t j = 0; j < jobs; ++j) pool.emplace_back(worker);
  }

  std::vector<std::vector<std::string>> table;
  size_t failed = 0;
  for (size_t i = 0; i < recipes.size(); ++i) {
    if (rows[i]) {
      table.push_back(rows[i]->fields);
    } else {
      ++failed;
      std::string msg = errors[i];
      if (msg.find(recipes[i].recipe_id) == std::string::npos)
        msg = "recipe " + recipes[i].recipe_id + ": " + msg;
      Fail(cmd, msg);
    }
  }
  WriteDelimited(results_path, ResultsHeader(), table);
  Log(cmd, "synthesized " + std::to_string(table.size()) + " of " +
               std::to_string(recipes.size()) + " recipes into " + out_dir.string());
  if (failed == 0) return kExitOk;
  return failed == recipes.size() ? kExitFailed : kExitSomeFailed;
}

RecipeLimits TrainingLimits(const PipelineConfig &c) {
  return {c.synth.recipe.snr_min, c.synth.recipe.snr_max, c.synth.recipe.rms_min,
          c.synth.recipe.rms_max};
}

}  // namespace

int Synthesize(const PipelineConfig &config, const RunOptions &run) {
  const fs::path out_dir = config.paths.out;
  std::vector<MixRecipe> recipes;
  if (!config.paths.recipes.empty()) {
    recipes = ReadRecipes(config.paths.recipes);
    Log("synthesize", "read " + std::to_string(recipes.size()) + " recipes from " +
                          config.paths.recipes);
  } else {
    recipes = BuildTrainingRecipes(
        ReadManifest(Require(config.paths.clean_manifest, "clean manifest")),
        ReadManifest(Require(config.paths.noise_manifest, "noise manifest")),
        config.synth.count, config.master_seed, config.synth.recipe);
    PrepareOutputs(out_dir, {out_dir / "recipes.jsonl"}, run);
    WriteRecipes(out_dir / "recipes.jsonl", recipes);
    Log("synthesize", "generated " + std::to_string(recipes.size()) +
                          " training recipes with seed " +
                          std::to_string(config.master_seed));
  }
  // Plan recipes may use other ranges; validate against the union.
  RecipeLimits limits = TrainingLimits(config);
  limits.snr_min = std::min(limits.snr_min, config.testset.snr_min);
  limits.snr_max = std::max(limits.snr_max, config.testset.snr_max);
  limits.rms_min = std::min(limits.rms_min, config.testset.rms_min);
  limits.rms_max = std::max(limits.rms_max, config.testset.rms_max);
  return SynthesizeRecipes("synthesize", recipes, config, out_dir, run, limits);
}

int BuildTestset(const PipelineConfig &config, const RunOptions &run,
                 bool synthesize_now) {
  const fs::path out_dir = config.paths.out;
  const Manifest clean = ReadManifest(Require(config.paths.clean_manifest, "clean manifest"));
  const Manifest noise = ReadManifest(Require(config.paths.noise_manifest, "noise manifest"));
  Manifest rirs;
  if (config.testset.reverb) {
    if (config.paths.rir_manifest.empty())
      throw Error(ErrorCode::kPlan, "reverb requested but no RIR manifest configured");
    rirs = ReadManifest(config.paths.rir_manifest);
  }
  const TestPlan plan =
      BuildTestPlan(clean, noise, rirs, config.master_seed, config.testset);
  const std::string name(TestSetCategoryName(plan.category));
  const fs::path plan_path = out_dir / ("testset_" + name + ".jsonl");
  const fs::path comp_path = out_dir / ("testset_" + name + ".composition.csv");
  PrepareOutputs(out_dir, {plan_path, comp_path}, run);
  WriteRecipes(plan_path, plan.recipes);
  WriteTextFile(comp_path, FormatComposition(plan, config.testset.priority_categories));
  Log("build-testset", "wrote " + std::to_string(plan.recipes.size()) + " recipes (" +
                           std::to_string(plan.priority_count) + " priority, " +
                           std::to_string(plan.random_count) + " random) to " +
                           plan_path.string());
  if (!synthesize_now) return kExitOk;
  const RecipeLimits limits{config.testset.snr_min, config.testset.snr_max,
                            config.testset.rms_min, config.testset.rms_max};
  return SynthesizeRecipes("build-testset", plan.recipes, config, out_dir / name, run,
                           limits);
}

int FilterCorpus(const PipelineConfig &config, const RunOptions &run) {
  const fs::path out_dir = config.paths.out;
  const fs::path manifest_path = Require(config.paths.clean_manifest, "clean manifest");
  const Manifest clean = ReadManifest(manifest_path);
  const DelimitedTable ratings =
      ReadDelimited(Require(config.paths.chapter_ratings, "chapter ratings"),
                    {"chapter_id", "clip_id", "score"});
  if (ratings.rows.empty())
    throw Error(ErrorCode::kArgument, "chapter ratings file has no rows");

  std::map<std::string, std::map<std::string, std::vector<int>>> by_chapter;
  for (size_t i = 0; i < ratings.rows.size(); ++i) {
    const auto &row = ratings.rows[i];
    by_chapter[row[0]][row[1]].push_back(static_cast<int>(ParseInt(
        row[2], config.paths.chapter_ratings + ":" +
                    std::to_string(ratings.line_numbers[i]) + " score")));
  }
  std::vector<ChapterScore> chapters;
  for (const auto &[chapter, clips] : by_chapter) {
    std::vector<std::vector<int>> scores;
    for (const auto &[clip, s] : clips) scores.push_back(s);
    chapters.push_back(ChapterMos(chapter, scores));
  }
  const QuartileSelection selection = SelectUpperQuartile(chapters);
  const std::set<std::string> chosen(selection.selected_ids.begin(),
                                     selection.selected_ids.end());
  Log("filter-corpus", "selected " + std::to_string(chosen.size()) + " of " +
                           std::to_string(chapters.size()) +
                           " chapters; realized MOS threshold " +
                           FormatDouble(selection.threshold_mos));

  Manifest kept;
  for (const ClipRecord &r : clean)
    if (r.kind == ClipKind::kClean && chosen.count(r.chapter_id)) kept.push_back(r);
  const Manifest pruned =
      SortedById(PruneSpeakers(kept, config.corpus.min_speaker_seconds));
  Log("filter-corpus", "speaker pruning kept " + std::to_string(pruned.size()) +
                           " of " + std::to_string(kept.size()) + " clips");

  const fs::path seg_dir = out_dir / "segments";
  const fs::path scores_path = out_dir / "chapter_scores.csv";
  const fs::path filtered_path = out_dir / "clean_filtered.csv";
  PrepareOutputs(out_dir, {scores_path, filtered_path}, run);
  fs::create_directories(seg_dir);

  std::vector<std::vector<std::string>> score_rows;
  for (const ChapterScore &c : chapters) {
    size_t n = 0;
    for (const auto &s : c.clip_scores) n += s.size();
    score_rows.push_back({c.chapter_id, FormatDouble(c.mos), FormatDouble(c.ci95),
                          std::to_string(n), chosen.count(c.chapter_id) ? "1" : "0"});
  }
  WriteDelimited(scores_path, {"chapter_id", "mos", "ci95", "n", "selected"}, score_rows);

  Manifest segments;
  size_t failed = 0;
  for (const ClipRecord &r : pruned) {
    try {
      const AudioClip clip = ReadWav(ResolveClipPath(manifest_path, r));
      const std::vector<AudioClip> segs = SegmentClip(clip, config.corpus.segment_seconds);
      for (size_t k = 0; k < segs.size(); ++k) {
        std::string idx = std::to_string(k);
        idx.insert(0, idx.size() < 3 ? 3 - idx.size() : 0, '0');
        ClipRecord seg = r;
        seg.clip_id = r.clip_id + "_seg" + idx;
        seg.path = "segments/" + seg.clip_id + ".wav";
        seg.duration_s = segs[k].duration_seconds();
        const fs::path target = out_dir / seg.path;
        if (!run.force && fs::exists(target))
          throw Error(ErrorCode::kIo, target.string() + " already exists; pass --force");
        WriteWav(segs[k], target);
        segments.push_back(std::move(seg));
      }
    } catch (const std::exception &e) {
      ++failed;
      Fail("filter-corpus", "clip " + r.clip_id + ": " + e.what());
    }
  }
  WriteManifest(filtered_path, segments);
  Log("filter-corpus", "wrote " + std::to_string(segments.size()) + " segments");
  if (failed == 0) return kExitOk;
  return failed == pruned.size() ? kExitFailed : kExitSomeFailed;
}

int BalanceNoise(const PipelineConfig &config, const RunOptions &run) {
  const fs::path out_dir = config.paths.out;
  const Manifest all = ReadManifest(Require(config.paths.noise_manifest, "noise manifest"));
  Manifest noise;
  for (const ClipRecord &r : all)
    if (r.kind == ClipKind::kNoise) noise.push_back(r);

  const fs::path screen_path = out_dir / "speech_screen.csv";
  const fs::path balanced_path = out_dir / "noise_balanced.csv";
  const fs::path report_path = out_dir / "balance_report.csv";
  PrepareOutputs(out_dir, {screen_path, balanced_path, report_path}, run);

  Manifest screened;
  if (!config.paths.speech_probs.empty()) {
    std::map<std::string, double> probs;
    for (const SpeechProbability &p : ReadSpeechSidecar(config.paths.speech_probs))
      probs[p.clip_id] = p.speech_prob;
    std::vector<std::vector<std::string>> rows;
    for (const ClipRecord &r : SortedById(noise)) {
      const auto it = probs.find(r.clip_id);
      if (it == probs.end())
        throw Error(ErrorCode::kData, "no speech probability for noise clip " + r.clip_id);
      const SpeechScreenResult s =
          ScreenNoiseClip(r.clip_id, it->second, config.corpus.speech_threshold);
      rows.push_back({s.clip_id, FormatDouble(s.speech_probability), s.keep ? "1" : "0"});
      if (s.keep) screened.push_back(r);
    }
    WriteDelimited(screen_path, {"clip_id", "speech_prob", "keep"}, rows);
    Log("balance-noise", "speech screening kept " + std::to_string(screened.size()) +
                             " of " + std::to_string(noise.size()) + " clips");
  } else {
    Warn("balance-noise", "no speech probability sidecar; screening skipped");
    screened = noise;
  }

  const BalanceResult result =
      BalanceClasses(screened, config.corpus.min_per_class, config.master_seed);
  const std::set<std::string> selected(result.selected_ids.begin(),
                                       result.selected_ids.end());
  Manifest balanced;
  for (const ClipRecord &r : SortedById(screened))
    if (selected.count(r.clip_id)) balanced.push_back(r);
  WriteManifest(balanced_path, balanced);

  std::vector<std::vector<std::string>> rows;
  size_t under = 0;
  for (const ClassBalance &c : result.classes) {
    rows.push_back({c.label, std::to_string(c.available), std::to_string(c.selected),
                    c.under_quota ? "1" : "0"});
    under += c.under_quota;
  }
  WriteDelimited(report_path, {"label", "available", "selected", "under_quota"}, rows);
  Log("balance-noise", "selected " + std::to_string(balanced.size()) + " clips over " +
                           std::to_string(result.classes.size()) + " classes; " +
                           std::to_string(under) + " classes under quota");
  return kExitOk;
}

int BuildGroups(const PipelineConfig &config, const RunOptions &run,
                const std::string &clips_path) {
  const fs::path out_dir = config.paths.out;
  const DelimitedTable clips = ReadDelimited(Require(clips_path, "clip list"), {"clip_id"});
  std::vector<std::string> ids;
  for (const auto &row : clips.rows) ids.push_back(row[0]);
  const auto gold = p808::ReadControlPool(Require(config.paths.gold_pool, "gold pool"));
  const auto trap = p808::ReadControlPool(Require(config.paths.trap_pool, "trap pool"));
  const auto groups =
      p808::BuildGroups(ids, config.p808.groups, gold, trap, config.master_seed);
  const fs::path path = out_dir / "assignments.jsonl";
  PrepareOutputs(out_dir, {path}, run);
  WriteTextFile(path, p808::FormatAssignments(groups));
  Log("build-groups", "wrote " + std::to_string(groups.size()) + " groups to " +
                          path.string());
  return kExitOk;
}

int AggregateRatings(const PipelineConfig &config, const RunOptions &run) {
  const fs::path out_dir = config.paths.out;
  const auto records = p808::ReadRatings(Require(config.paths.ratings, "ratings file"));
  if (records.empty()) throw Error(ErrorCode::kArgument, "ratings file has no rows");
  const auto assignments =
      p808::ReadAssignments(Require(config.paths.assignments, "assignments file"));
  const auto conditions =
      p808::ReadConditionMap(Require(config.paths.conditions, "condition map"));

  const fs::path cond_path = out_dir / "condition_mos.csv";
  const fs::path clip_path = out_dir / "clip_mos.csv";
  const fs::path rej_path = out_dir / "rejections.csv";
  const fs::path rater_path = out_dir / "raters.csv";
  std::vector<fs::path> outputs = {cond_path, clip_path, rej_path, rater_path};
  if (!config.paths.reference.empty()) outputs.push_back(out_dir / "spearman.csv");
  PrepareOutputs(out_dir, outputs, run);

  const p808::FilterResult filtered =
      p808::FilterRatings(records, assignments, config.p808.gold_tolerance);
  if (config.p808.max_ratings_per_day > 0) {
    for (const auto &v : p808::RateLimitViolations(records, config.p808.max_ratings_per_day))
      Warn("aggregate-ratings", "rater " + v.rater_id + " gave " +
                                    std::to_string(v.count) + " ratings on day " +
                                    std::to_string(v.day));
  }
  const auto by_condition = p808::ConditionMos(filtered.accepted, conditions);
  WriteTextFile(cond_path, p808::FormatSummaries(by_condition));
  WriteTextFile(clip_path, p808::FormatSummaries(p808::ClipMos(filtered.accepted)));
  WriteTextFile(rej_path, p808::FormatRejections(filtered.rejections));
  std::vector<std::vector<std::string>> rater_rows;
  for (const auto &[rater, report] : filtered.raters)
    rater_rows.push_back({rater, std::to_string(report.groups_accepted),
                          std::to_string(report.groups_rejected)});
  WriteDelimited(rater_path, {"rater_id", "groups_accepted", "groups_rejected"}, rater_rows);
  Log("aggregate-ratings", "accepted " + std::to_string(filtered.accepted.size()) +
                               " ratings; rejected " +
                               std::to_string(filtered.rejections.size()) + " group sessions");

  if (!config.paths.reference.empty()) {
    const auto reference = p808::ReadReferenceScores(config.paths.reference);
    std::vector<double> ours, theirs;
    for (const p808::ScoreSummary &s : by_condition) {
      const auto it = reference.find(s.subject_id);
      if (it == reference.end()) continue;
      ours.push_back(s.mos);
      theirs.push_back(it->second);
    }
    const double rho = p808::Spearman(ours, theirs);
    WriteDelimited(out_dir / "spearman.csv", {"conditions", "spearman"},
                   {{std::to_string(ours.size()), FormatDouble(rho)}});
    Log("aggregate-ratings", "Spearman vs reference over " + std::to_string(ours.size()) +
                                 " conditions: " + FormatDouble(rho));
  }
  return kExitOk;
}

int VerifyRt(const PipelineConfig &config, const RunOptions &run,
             const std::string &processor_command) {
  const fs::path out_dir = config.paths.out;
  const fs::path report_path = out_dir / "verify_report.json";
  PrepareOutputs(out_dir, {report_path}, run);
  rt::SubprocessProcessor proc(Require(processor_command, "processor command"),
                               config.harness.constraints.sample_rate);

  rt::StreamConstraints limits = config.harness.constraints;
  limits.frame_ms = proc.frame_ms();
  const rt::StreamConstraints declared{proc.frame_ms(), proc.lookahead_ms(),
                                       limits.sample_rate};
  Log("verify-rt", "processor declares frame_ms=" + std::to_string(proc.frame_ms()) +
                       " lookahead_ms=" + std::to_string(proc.lookahead_ms()));

  const rt::ProbeReport probe = rt::ProbeLookahead(
      proc, limits,
      {config.harness.trials, config.harness.signal_seconds, config.master_seed});

  Rng rng(DeriveSeed(config.master_seed, HashString("timing")));
  std::vector<double> samples(static_cast<size_t>(config.harness.timing_seconds *
                                                  limits.sample_rate));
  for (double &s : samples) s = rng.Uniform(-0.1, 0.1);
  const AudioClip timing_clip(std::move(samples), limits.sample_rate);
  const rt::TimingReport timing =
      rt::MeasureBudget(proc, timing_clip, declared, config.harness.warmup_frames);
  const int track = rt::ClassifyTrack(declared, timing);

  nlohmann::ordered_json j;
  j["processor"] = processor_command;
  j["frame_ms"] = declared.frame_ms;
  j["lookahead_ms"] = declared.lookahead_ms;
  j["lookahead_limit_ms"] = limits.lookahead_ms;
  j["causality"]["pass"] = probe.pass();
  j["causality"]["trials"] = probe.trials.size();
  j["causality"]["flagged"] = probe.flagged();
  if (const auto v = probe.first_violation()) {
    j["causality"]["first_violation_frame"] = *v->first_violation;
    j["causality"]["boundary_frame"] = v->boundary_frame;
  }
  j["timing"]["mean_ms"] = timing.mean_ms;
  j["timing"]["p50_ms"] = timing.p50_ms;
  j["timing"]["p95_ms"] = timing.p95_ms;
  j["timing"]["max_ms"] = timing.max_ms;
  j["timing"]["budget_ms"] = timing.budget_ms;
  j["timing"]["frames"] = timing.frames;
  j["timing"]["pass"] = timing.pass;
  j["timing"]["host"] = timing.host;
  j["track"] = track;
  WriteTextFile(report_path, j.dump(2) + "\n");
  std::cout << j.dump(2) << std::endl;

  if (!probe.pass()) {
    const auto v = *probe.first_violation();
    Fail("verify-rt", "causality violation: aligned frame " +
                          std::to_string(*v.first_violation) +
                          " depends on input beyond the " +
                          std::to_string(limits.lookahead_ms) + " ms lookahead (" +
                          std::to_string(probe.flagged()) + "/" +
                          std::to_string(probe.trials.size()) + " trials)");
    return kExitSomeFailed;
  }
  Log("verify-rt", std::string("causality pass; budget ") +
                       (timing.pass ? "pass" : "fail") + "; track " +
                       std::to_string(track));
  return kExitOk;
}

int RankEntries(const PipelineConfig &config, const RunOptions &run) {
  const fs::path out_dir = config.paths.out;
  const auto entries = rt::ReadEntries(Require(config.paths.entries, "entries file"));
  if (entries.empty()) throw Error(ErrorCode::kArgument, "entries file has no rows");
  const fs::path path = out_dir / "ranking.csv";
  PrepareOutputs(out_dir, {path}, run);
  std::map<int, std::vector<rt::SubmissionEntry>> by_track;
  for (const auto &e : entries) by_track[e.track].push_back(e);
  std::vector<std::vector<std::string>> rows;
  for (const auto &[track, list] : by_track) {
    const auto ranked = rt::Rank(list);
    for (size_t i = 0; i < ranked.size(); ++i) {
      const auto &e = ranked[i];
      rows.push_back({std::to_string(track), std::to_string(i + 1), e.entry_id,
                      FormatDouble(e.mos), std::to_string(e.param_count),
                      FormatDouble(e.per_frame_ms)});
      std::cout << "track " << track << " #" << i + 1 << " " << e.entry_id << " mos="
                << FormatDouble(e.mos) << " params=" << e.param_count << '\n';
    }
  }
  WriteDelimited(path, {"track", "rank", "entry_id", "mos", "param_count", "per_frame_ms"},
                 rows);
  return kExitOk;
}

}  // namespace dnsgen::cli
