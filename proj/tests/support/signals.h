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

// Synthetic sources for tests and benchmarks, plus small filesystem helpers.

#ifndef DNSGEN_TESTS_SUPPORT_SIGNALS_H_
#define DNSGEN_TESTS_SUPPORT_SIGNALS_H_

#include <cstdint>
#include <filesystem>
#include <string>

#include "dnsgen/audio.h"

namespace dnsgen::testing {

// Speech-like: a harmonic tone under a squared-sine syllable envelope, so
// roughly half the frames are near silent. Carrier and rates come from seed.
AudioClip AmTone(double seconds, uint64_t seed, int rate = kCanonicalSampleRate,
                 double amplitude = 0.3);

// Noise-like: Gaussian noise through a seeded one-pole low-pass.
AudioClip FilteredNoise(double seconds, uint64_t seed,
                        int rate = kCanonicalSampleRate, double amplitude = 0.1);

// Decaying noise burst, usable as a room impulse response.
AudioClip SyntheticRir(double rt60_ms, uint64_t seed, int rate = kCanonicalSampleRate);

// Fresh empty directory under the system temp dir, removed on destruction.
class ScratchDir {
 public:
  explicit ScratchDir(const std::string &tag);
  ~ScratchDir();
  ScratchDir(const ScratchDir &) = delete;
  ScratchDir &operator=(const ScratchDir &) = delete;
  const std::filesystem::path &path() const { return path_; }

 private:
  std::filesystem::path path_;
};

std::string ReadFileBytes(const std::filesystem::path &path);

}  // namespace dnsgen::testing

#endif  // DNSGEN_TESTS_SUPPORT_SIGNALS_H_
