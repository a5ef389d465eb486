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

#include "dnsgen/manifest.h"

#include <algorithm>
#include <charconv>
#include <set>

#include "dnsgen/delimited.h"
#include "dnsgen/error.h"

namespace dnsgen {

std::string_view ClipKindName(ClipKind kind) {
  switch (kind) {
    case ClipKind::kClean: return "clean";
    case ClipKind::kNoise: return "noise";
    case ClipKind::kRir: return "rir";
  }
  return "clean";
}

ClipKind ParseClipKind(std::string_view text) {
  if (text == "clean") return ClipKind::kClean;
  if (text == "noise") return ClipKind::kNoise;
  if (text == "rir") return ClipKind::kRir;
  throw Error(ErrorCode::kData, "unknown clip kind '" + std::string(text) + "'");
}

Manifest ParseManifest(std::string_view text, std::string_view source_name) {
  const DelimitedTable table =
      ParseDelimited(text, ManifestHeader(), source_name);
  Manifest manifest;
  manifest.reserve(table.rows.size());
  std::set<std::string> seen;
  for (size_t r = 0; r < table.rows.size(); ++r) {
    const auto &row = table.rows[r];
    const std::string where =
        std::string(source_name) + ":" + std::to_string(table.line_numbers[r]);
    try {
      ClipRecord rec;
      rec.clip_id = row[0];
      rec.path = row[1];
      rec.kind = ParseClipKind(row[2]);
      rec.duration_s = ParseDouble(row[3], "duration_s");
      if (!row[4].empty()) rec.labels = SplitFields(row[4], '|');
      rec.speaker_id = row[5];
      rec.chapter_id = row[6];
      rec.category = row[7];
      if (rec.clip_id.empty())
        throw Error(ErrorCode::kData, "empty clip_id");
      if (!(rec.duration_s >= 0.0))
        throw Error(ErrorCode::kData, "negative duration");
      if (rec.kind == ClipKind::kNoise && rec.labels.empty())
        throw Error(ErrorCode::kData, "noise clip " + rec.clip_id +
                                          " carries no labels");
      if (std::any_of(rec.labels.begin(), rec.labels.end(),
                      [](const std::string &l) { return l.empty(); }))
        throw Error(ErrorCode::kData, "empty label");
      if (!seen.insert(rec.clip_id).second)
        throw Error(ErrorCode::kData, "duplicate clip_id " + rec.clip_id);
      manifest.push_back(std::move(rec));
    } catch (const Error &e) {
      throw e.WithContext(where);
    }
  }
  return manifest;
}

Manifest ReadManifest(const std::filesystem::path &path) {
  return ParseManifest(ReadTextFile(path), path.string());
}

std::string FormatManifest(const Manifest &manifest) {
  std::vector<std::vector<std::string>> rows;
  rows.reserve(manifest.size());
  for (const ClipRecord &rec : manifest) {
    std::string labels;
    for (size_t i = 0; i < rec.labels.size(); ++i) {
      if (i) labels += '|';
      labels += rec.labels[i];
    }
    rows.push_back({rec.clip_id, rec.path, std::string(ClipKindName(rec.kind)),
                    FormatDouble(rec.duration_s), labels, rec.speaker_id,
                    rec.chapter_id, rec.category});
  }
  return FormatDelimited(ManifestHeader(), rows);
}

void WriteManifest(const std::filesystem::path &path, const Manifest &manifest) {
  WriteTextFile(path, FormatManifest(manifest));
}

Manifest SortedById(Manifest manifest) {
  std::sort(manifest.begin(), manifest.end(),
            [](const ClipRecord &a, const ClipRecord &b) {
              return a.clip_id < b.clip_id;
            });
  return manifest;
}

std::filesystem::path ResolveClipPath(const std::filesystem::path &manifest_path,
                                      const ClipRecord &record) {
  const std::filesystem::path p(record.path);
  if (p.is_absolute()) return p;
  return manifest_path.parent_path() / p;
}

std::optional<double> RirRt60Ms(const ClipRecord &record) {
  const std::string &s = record.category;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size())
    return std::nullopt;
  return v;
}

}  // namespace dnsgen
