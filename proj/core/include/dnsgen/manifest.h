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

#ifndef DNSGEN_MANIFEST_H_
#define DNSGEN_MANIFEST_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dnsgen {

enum class ClipKind { kClean, kNoise, kRir };

std::string_view ClipKindName(ClipKind kind);
ClipKind ParseClipKind(std::string_view text);

// Catalog row for a source clip.
struct ClipRecord {
  std::string clip_id;
  std::string path;
  ClipKind kind = ClipKind::kClean;
  double duration_s = 0.0;
  std::vector<std::string> labels;  // noise only, 1..15 labels
  std::string speaker_id;           // clean only
  std::string chapter_id;           // clean only
  // Noise: primary class used for test-plan bucketing.
  // RIR: the RT60 in milliseconds, as a decimal number.
  std::string category;

  friend bool operator==(const ClipRecord &, const ClipRecord &) = default;
};

using Manifest = std::vector<ClipRecord>;

inline const std::vector<std::string> &ManifestHeader() {
  static const std::vector<std::string> header = {
      "clip_id", "path", "kind", "duration_s", "labels",
      "speaker_id", "chapter_id", "category"};
  return header;
}

// Throws kData on malformed rows (unknown kind, noise row without labels,
// negative duration, duplicate clip_id).
Manifest ReadManifest(const std::filesystem::path &path);
Manifest ParseManifest(std::string_view text,
                       std::string_view source_name = "<manifest>");
void WriteManifest(const std::filesystem::path &path, const Manifest &manifest);
std::string FormatManifest(const Manifest &manifest);

// Rows sorted by clip_id, so downstream sampling does not depend on the
// order the store returned them in.
Manifest SortedById(Manifest manifest);

// Relative paths resolve against the manifest's directory.
std::filesystem::path ResolveClipPath(const std::filesystem::path &manifest_path,
                                      const ClipRecord &record);

// RT60 of a RIR row; nullopt if the category field is not a number.
std::optional<double> RirRt60Ms(const ClipRecord &record);

}  // namespace dnsgen

#endif  // DNSGEN_MANIFEST_H_
