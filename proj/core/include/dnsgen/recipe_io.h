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

#ifndef DNSGEN_RECIPE_IO_H_
#define DNSGEN_RECIPE_IO_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "dnsgen/corpus.h"
#include "dnsgen/synth.h"

namespace dnsgen {

inline constexpr int kRecipeFormatVersion = 1;

// One JSON object per line, fixed key order:
// format_version, recipe_id, clean_clip_ids, noise_clip_ids, target_snr,
// target_rms, duration, rir_id, seed.
std::string FormatRecipeLine(const MixRecipe &recipe);
MixRecipe ParseRecipeLine(std::string_view line);

std::string FormatRecipes(const std::vector<MixRecipe> &recipes);
// Throws kData naming the line on malformed records or an unknown version.
std::vector<MixRecipe> ParseRecipes(std::string_view text,
                                    std::string_view source_name = "<recipes>");

void WriteRecipes(const std::filesystem::path &path,
                  const std::vector<MixRecipe> &recipes);
std::vector<MixRecipe> ReadRecipes(const std::filesystem::path &path);

// `category,count,kind` rows; kind is priority or random, plus a total row.
std::string FormatComposition(const TestPlan &plan,
                              const std::vector<std::string> &priority_categories);

// Header of the synthesis results manifest.
inline const std::vector<std::string> &ResultsHeader() {
  static const std::vector<std::string> header = {
      "recipe_id",  "noisy_path",   "clean_path",  "noise_path", "target_snr",
      "achieved_snr", "target_rms", "achieved_rms", "clipped"};
  return header;
}

}  // namespace dnsgen

#endif  // DNSGEN_RECIPE_IO_H_
