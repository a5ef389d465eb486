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

// Independent reference implementations used to check the library. They are
// deliberately naive: brute force, long double, direct formulas.

#ifndef DNSGEN_TESTS_SUPPORT_ORACLES_H_
#define DNSGEN_TESTS_SUPPORT_ORACLES_H_

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "dnsgen/audio.h"
#include "dnsgen/rtcheck.h"

namespace dnsgen::testing {

// Segmental SNR over frames where both signals are within rel_db of their own
// loudest frame, evaluated in the dB domain. nullopt if no such frame.
std::optional<double> OracleSegmentalSnrDb(std::span<const double> speech,
                                           std::span<const double> noise,
                                           int sample_rate, int frame_ms = 20,
                                           double rel_db = -40.0);

double OracleRmsDbfs(std::span<const double> x);

// Tie-free Spearman from 1 - 6 sum d^2 / (n (n^2 - 1)), ranks by counting.
double OracleSpearmanTieFree(std::span<const double> x, std::span<const double> y);

// 0.975 quantile of Student's t by integrating the density.
double OracleT975(int dof);

// Exhaustive check for the balancing rule on tiny instances. Each clip is a
// bitmask of class indices.
struct BalanceInstance {
  std::vector<uint32_t> clip_labels;
  int num_classes = 0;
  size_t quota = 0;
};

// Every subset (as a clip bitmask) where each class holds at least
// min(quota, available) selected clips.
std::vector<uint32_t> OracleFeasibleSubsets(const BalanceInstance &inst);

// Every terminal state reachable from the MOS-sorted order through legal
// near-tie swaps, as entry id sequences.
std::set<std::vector<std::string>> OracleRankFixpoints(
    const std::vector<rt::SubmissionEntry> &entries);

}  // namespace dnsgen::testing

#endif  // DNSGEN_TESTS_SUPPORT_ORACLES_H_
