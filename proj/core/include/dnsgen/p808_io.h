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

#ifndef DNSGEN_P808_IO_H_
#define DNSGEN_P808_IO_H_

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dnsgen/p808.h"

namespace dnsgen::p808 {

// Ratings: header `rater_id,clip_id,group_id,score,timestamp`.
std::vector<RatingRecord> ReadRatings(const std::filesystem::path &path);
std::vector<RatingRecord> ParseRatings(std::string_view text,
                                       std::string_view source_name = "<ratings>");
std::string FormatRatings(const std::vector<RatingRecord> &records);

// Assignments: one JSON object per line mirroring GroupAssignment.
std::string FormatAssignments(const std::vector<GroupAssignment> &groups);
std::vector<GroupAssignment> ParseAssignments(
    std::string_view text, std::string_view source_name = "<assignments>");
std::vector<GroupAssignment> ReadAssignments(const std::filesystem::path &path);

// `clip_id,condition`.
std::map<std::string, std::string> ReadConditionMap(
    const std::filesystem::path &path);

// `clip_id,expected`, used for gold and trap pools.
std::vector<ControlItem> ReadControlPool(const std::filesystem::path &path);

// `subject_id,mos` reference scores (e.g. lab MOS per condition).
std::map<std::string, double> ReadReferenceScores(
    const std::filesystem::path &path);

// `subject_id,mos,ci95,n`.
std::string FormatSummaries(const std::vector<ScoreSummary> &summaries);

// `rater_id,group_id,reason`.
std::string FormatRejections(const std::vector<GroupRejection> &rejections);

}  // namespace dnsgen::p808

#endif  // DNSGEN_P808_IO_H_
