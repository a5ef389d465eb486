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

#include "dnsgen/config.h"

#include <algorithm>
#include <functional>
#include <sstream>
#include <type_traits>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include "dnsgen/delimited.h"
#include "dnsgen/error.h"

namespace dnsgen {

namespace {

struct Binding {
  std::string section;
  std::string key;
  std::function<void(const std::string &)> set;
  std::function<std::string()> get;
};

Binding Str(std::string s, std::string k, std::string &v, bool is_path,
            const std::filesystem::path &base) {
  return {std::move(s), std::move(k),
          [&v, is_path, base](const std::string &x) {
            std::filesystem::path p(x);
            v = (is_path && !x.empty() && p.is_relative() && !base.empty())
                    ? (base / p).lexically_normal().string()
                    : x;
          },
          [&v] { return v; }};
}

Binding Num(std::string s, std::string k, double &v) {
  return {std::move(s), std::move(k),
          [&v](const std::string &x) { v = ParseDouble(x, "config value"); },
          [&v] { return FormatDouble(v); }};
}

template <typename Int>
Binding Integer(std::string s, std::string k, Int &v) {
  return {std::move(s), std::move(k),
          [&v](const std::string &x) {
            if constexpr (std::is_unsigned_v<Int>)
              v = static_cast<Int>(ParseUint(x, "config value"));
            else
              v = static_cast<Int>(ParseInt(x, "config value"));
          },
          [&v] { return std::to_string(v); }};
}

Binding Bool(std::string s, std::string k, bool &v) {
  return {std::move(s), std::move(k),
          [&v](const std::string &x) {
            if (x == "true" || x == "1") v = true;
            else if (x == "false" || x == "0") v = false;
            else throw Error(ErrorCode::kArgument, "expected true/false, got '" + x + "'");
          },
          [&v] { return std::string(v ? "true" : "false"); }};
}

Binding List(std::string s, std::string k, std::vector<std::string> &v) {
  return {std::move(s), std::move(k),
          [&v](const std::string &x) { v = SplitFields(x, '|'); },
          [&v] {
            std::string out;
            for (size_t i = 0; i < v.size(); ++i) out += (i ? "|" : "") + v[i];
            return out;
          }};
}

std::vector<Binding> Bindings(PipelineConfig &c, const std::filesystem::path &base) {
  auto &p = c.paths;
  auto &r = c.synth.recipe;
  auto &m = c.synth.mix;
  auto &t = c.testset;
  auto &h = c.harness;
  return {
      Integer("general", "seed", c.master_seed),
      Integer("general", "jobs", c.jobs),
      Str("paths", "clean_manifest", p.clean_manifest, true, base),
      Str("paths", "noise_manifest", p.noise_manifest, true, base),
      Str("paths", "rir_manifest", p.rir_manifest, true, base),
      Str("paths", "recipes", p.recipes, true, base),
      Str("paths", "chapter_ratings", p.chapter_ratings, true, base),
      Str("paths", "speech_probs", p.speech_probs, true, base),
      Str("paths", "ratings", p.ratings, true, base),
      Str("paths", "assignments", p.assignments, true, base),
      Str("paths", "conditions", p.conditions, true, base),
      Str("paths", "reference", p.reference, true, base),
      Str("paths", "gold_pool", p.gold_pool, true, base),
      Str("paths", "trap_pool", p.trap_pool, true, base),
      Str("paths", "entries", p.entries, true, base),
      Str("paths", "out", p.out, true, base),
      Integer("synth", "count", c.synth.count),
      Num("synth", "snr_min", r.snr_min),
      Num("synth", "snr_max", r.snr_max),
      Num("synth", "rms_min", r.rms_min),
      Num("synth", "rms_max", r.rms_max),
      Num("synth", "duration", r.duration),
      Integer("synth", "speech_gap_ms", r.speech_gap_ms),
      Integer("synth", "frame_ms", m.frame_ms),
      Num("synth", "activity_threshold_db", m.activity_threshold_db),
      Num("synth", "headroom_peak", m.headroom_peak),
      Num("corpus", "min_speaker_seconds", c.corpus.min_speaker_seconds),
      Num("corpus", "segment_seconds", c.corpus.segment_seconds),
      Integer("corpus", "min_per_class", c.corpus.min_per_class),
      Num("corpus", "speech_threshold", c.corpus.speech_threshold),
      List("testset", "priority_categories", t.priority_categories),
      Integer("testset", "per_category", t.per_category),
      Integer("testset", "random_count", t.random_count),
      Num("testset", "snr_min", t.snr_min),
      Num("testset", "snr_max", t.snr_max),
      Num("testset", "rms_min", t.rms_min),
      Num("testset", "rms_max", t.rms_max),
      Num("testset", "duration", t.duration),
      Num("testset", "rt60_min_ms", t.rt60_min_ms),
      Num("testset", "rt60_max_ms", t.rt60_max_ms),
      Bool("testset", "reverb", t.reverb),
      Integer("p808", "group_size", c.p808.groups.group_size),
      Integer("p808", "ratings_per_clip", c.p808.groups.ratings_per_clip),
      Integer("p808", "gold_tolerance", c.p808.gold_tolerance),
      Integer("p808", "max_ratings_per_day", c.p808.max_ratings_per_day),
      Integer("harness", "frame_ms", h.constraints.frame_ms),
      Integer("harness", "lookahead_ms", h.constraints.lookahead_ms),
      Integer("harness", "trials", h.trials),
      Num("harness", "signal_seconds", h.signal_seconds),
      Integer("harness", "warmup_frames", h.warmup_frames),
      Num("harness", "timing_seconds", h.timing_seconds),
  };
}

}  // namespace

void ApplyConfigText(const std::string &ini_text, PipelineConfig &config,
                     const std::filesystem::path &base_dir) {
  boost::property_tree::ptree tree;
  std::istringstream in(ini_text);
  try {
    boost::property_tree::read_ini(in, tree);
  } catch (const boost::property_tree::ini_parser_error &e) {
    throw Error(ErrorCode::kArgument, std::string("config: ") + e.what());
  }
  std::vector<Binding> bindings = Bindings(config, base_dir);
  for (const auto &[section, keys] : tree) {
    if (keys.empty() && !keys.data().empty())
      throw Error(ErrorCode::kArgument,
                  "config: key '" + section + "' outside a section");
    for (const auto &[key, value] : keys) {
      auto it = std::find_if(bindings.begin(), bindings.end(), [&](const Binding &b) {
        return b.section == section && b.key == key;
      });
      if (it == bindings.end())
        throw Error(ErrorCode::kArgument,
                    "config: unknown key [" + section + "] " + key);
      try {
        it->set(value.data());
      } catch (const Error &e) {
        throw Error(ErrorCode::kArgument,
                    "config: [" + section + "] " + key + ": " + e.what());
      }
    }
  }
  // One gap setting drives recipe drawing and bed construction alike.
  config.synth.mix.speech_gap_ms = config.synth.recipe.speech_gap_ms;
  config.testset.speech_gap_ms = config.synth.recipe.speech_gap_ms;
}

PipelineConfig LoadConfig(const std::filesystem::path &path) {
  PipelineConfig config;
  ApplyConfigText(ReadTextFile(path), config, path.parent_path());
  return config;
}

std::string DescribeConfig(const PipelineConfig &config) {
  PipelineConfig copy = config;
  std::string out, section;
  for (const Binding &b : Bindings(copy, {})) {
    if (b.section != section) {
      if (!section.empty()) out += '\n';
      section = b.section;
      out += "[" + section + "]\n";
    }
    out += b.key + " = " + b.get() + "\n";
  }
  return out;
}

}  // namespace dnsgen
