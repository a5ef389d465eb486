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

#include "dnsgen/recipe_io.h"

#include <set>

#include <nlohmann/json.hpp>

#include "dnsgen/delimited.h"
#include "dnsgen/error.h"

namespace dnsgen {

using ordered_json = nlohmann::ordered_json;

std::string FormatRecipeLine(const MixRecipe &recipe) {
  ordered_json j;
  j["format_version"] = kRecipeFormatVersion;
  j["recipe_id"] = recipe.recipe_id;
  j["clean_clip_ids"] = recipe.clean_clip_ids;
  j["noise_clip_ids"] = recipe.noise_clip_ids;
  j["target_snr"] = recipe.target_snr;
  j["target_rms"] = recipe.target_rms;
  j["duration"] = recipe.duration;
  if (recipe.rir_id)
    j["rir_id"] = *recipe.rir_id;
  else
    j["rir_id"] = nullptr;
  j["seed"] = recipe.seed;
  return j.dump();
}

MixRecipe ParseRecipeLine(std::string_view line) {
  ordered_json j;
  try {
    j = ordered_json::parse(line);
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kData, std::string("malformed JSON: ") + e.what());
  }
  try {
    const int version = j.at("format_version").get<int>();
    if (version != kRecipeFormatVersion)
      throw Error(ErrorCode::kData,
                  "unsupported format_version " + std::to_string(version));
    MixRecipe r;
    r.recipe_id = j.at("recipe_id").get<std::string>();
    r.clean_clip_ids = j.at("clean_clip_ids").get<std::vector<std::string>>();
    r.noise_clip_ids = j.at("noise_clip_ids").get<std::vector<std::string>>();
    r.target_snr = j.at("target_snr").get<double>();
    r.target_rms = j.at("target_rms").get<double>();
    r.duration = j.value("duration", kDefaultMixDurationSeconds);
    if (j.contains("rir_id") && !j["rir_id"].is_null())
      r.rir_id = j["rir_id"].get<std::string>();
    r.seed = j.at("seed").get<uint64_t>();
    return r;
  } catch (const nlohmann::json::exception &e) {
    throw Error(ErrorCode::kData, std::string("invalid recipe: ") + e.what());
  }
}

std::string FormatRecipes(const std::vector<MixRecipe> &recipes) {
  std::string out;
  for (const MixRecipe &r : recipes) {
    out += FormatRecipeLine(r);
    out += '\n';
  }
  return out;
}

std::vector<MixRecipe> ParseRecipes(std::string_view text,
                                    std::string_view source_name) {
  std::vector<MixRecipe> out;
  std::set<std::string> ids;
  size_t line_no = 0, pos = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    try {
      MixRecipe r = ParseRecipeLine(line);
      if (!ids.insert(r.recipe_id).second)
        throw Error(ErrorCode::kData, "duplicate recipe_id " + r.recipe_id);
      out.push_back(std::move(r));
    } catch (const Error &e) {
      throw e.WithContext(std::string(source_name) + ":" + std::to_string(line_no));
    }
  }
  return out;
}

void WriteRecipes(const std::filesystem::path &path,
                  const std::vector<MixRecipe> &recipes) {
  WriteTextFile(path, FormatRecipes(recipes));
}

std::vector<MixRecipe> ReadRecipes(const std::filesystem::path &path) {
  return ParseRecipes(ReadTextFile(path), path.string());
}

std::string FormatComposition(const TestPlan &plan,
                              const std::vector<std::string> &priority_categories) {
  const std::set<std::string> priority(priority_categories.begin(),
                                       priority_categories.end());
  std::vector<std::vector<std::string>> rows;
  for (const auto &[category, count] : plan.composition)
    rows.push_back({category, std::to_string(count),
                    priority.count(category) ? "priority" : "random"});
  rows.push_back({"total", std::to_string(plan.recipes.size()),
                  std::string(TestSetCategoryName(plan.category))});
  return FormatDelimited({"category", "count", "kind"}, rows);
}

}  // namespace dnsgen
