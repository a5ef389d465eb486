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

// Writes a small synthetic corpus (WAVs plus manifests) to disk for
// end-to-end runs of the command line tool.

#ifndef DNSGEN_TESTS_SUPPORT_CORPUS_FIXTURE_H_
#define DNSGEN_TESTS_SUPPORT_CORPUS_FIXTURE_H_

#include <filesystem>
#include <string>
#include <vector>

namespace dnsgen::testing {

struct CorpusLayout {
  size_t clean_clips = 12;
  double clean_seconds = 3.0;
  std::vector<std::string> priority_categories;  // empty: the default 12
  size_t per_category = 15;
  size_t other_clips = 120;
  double noise_seconds = 1.0;
  std::vector<double> rir_rt60_ms = {300, 700, 1300};
};

struct CorpusPaths {
  std::filesystem::path clean_manifest;
  std::filesystem::path noise_manifest;
  std::filesystem::path rir_manifest;
};

CorpusPaths WriteCorpus(const std::filesystem::path &root, const CorpusLayout &layout);

// Runs a shell command; returns its exit status (or -1 if it was signalled).
int RunCommand(const std::string &command);

}  // namespace dnsgen::testing

#endif  // DNSGEN_TESTS_SUPPORT_CORPUS_FIXTURE_H_
