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

#include "dnsgen/p808_io.h"

#include <nlohmann/json.hpp>

#include "dnsgen/delimited.h"
#include "dnsgen/error.h"

namespace dnsgen::p808 {

namespace {

std::string Where(std::string_view source, const DelimitedTable &t, size_t row) {
  return std::string(source) + ":" + std::to_string(t.line_numbers[row]);
}

}  // namespace

std::vector<RatingRecord> ParseRatings(std::string_view text,
                                       std::string_view source_name) {
  const DelimitedTable t = ParseDelimited(
      text, {"rater_id", "clip_id", "group_id", "score", "timestamp"},
      source_name);
  std::vector<RatingRecord> out;
  out.reserve(t.rows.size());
  for (size_t i = 0; i < t.rows.size(); ++i) {
    const auto &row = t.rows[i];
    const std::string where = Where(source_name, t, i);
    RatingRecord r;
    r.rater_id = row[0];
    r.clip_id = row[1];
    r.group_id = row[2];
    r.score = static_cast<int>(ParseInt(row[3], where + " score"));
    if (r.score < 1 || r.score > 5)
      throw Error(ErrorCode::kData, where + ": score " + row[3] +
                                        " outside the 1..5 ACR scale");
    r.timestamp = ParseInt(row[4], where + " timestamp");
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<RatingRecord> ReadRatings(const std::filesystem::path &path) {
  return ParseRatings(ReadTextFile(path), path.string());
}

std::string FormatRatings(const std::vector<RatingRecord> &records) {
  std::vector<std::vector<std::string>> rows;
  for (const RatingRecord &r : records)
    rows.push_back({r.rater_id, r.clip_id, r.group_id, std::to_string(r.score),
                    std::to_string(r.timestamp)});
  return FormatDelimited({"rater_id", "clip_id", "group_id", "score", "timestamp"},
                         rows);
}

std::string FormatAssignments(const std::vector<GroupAssignment> &groups) {
  std::string out;
  for (const GroupAssignment &g : groups) {
    nlohmann::ordered_json j;
    j["group_id"] = g.group_id;
    j["clip_ids"] = g.clip_ids;
    j["gold_position"] = g.gold_position;
    j["trap_position"] = g.trap_position;
    j["gold_expected"] = g.gold_expected;
    j["trap_expected"] = g.trap_expected;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::vector<GroupAssignment> ParseAssignments(std::string_view text,
                                              std::string_view source_name) {
  std::vector<GroupAssignment> out;
  size_t pos = 0, line_no = 0;
  while (pos < text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
    const std::string where =
        std::string(source_name) + ":" + std::to_string(line_no);
    try {
      const auto j = nlohmann::json::parse(line);
      GroupAssignment g;
      g.group_id = j.at("group_id").get<std::string>();
      g.clip_ids = j.at("clip_ids").get<std::vector<std::string>>();
      g.gold_position = j.at("gold_position").get<size_t>();
      g.trap_position = j.at("trap_position").get<size_t>();
      g.gold_expected = j.at("gold_expected").get<int>();
      g.trap_expected = j.at("trap_expected").get<int>();
      if (g.gold_position >= g.clip_ids.size() ||
          g.trap_position >= g.clip_ids.size() ||
          g.gold_position == g.trap_position)
        throw Error(ErrorCode::kData, where + ": invalid gold/trap positions");
      out.push_back(std::move(g));
    } catch (const nlohmann::json::exception &e) {
      throw Error(ErrorCode::kData, where + ": " + e.what());
    }
  }
  return out;
}

std::vector<GroupAssignment> ReadAssignments(const std::filesystem::path &path) {
  return ParseAssignments(ReadTextFile(path), path.string());
}

std::map<std::string, std::string> ReadConditionMap(
    const std::filesystem::path &path) {
  const DelimitedTable t = ReadDelimited(path, {"clip_id", "condition"});
  std::map<std::string, std::string> out;
  for (size_t i = 0; i < t.rows.size(); ++i)
    if (!out.emplace(t.rows[i][0], t.rows[i][1]).second)
      throw Error(ErrorCode::kData, Where(path.string(), t, i) +
                                        ": clip mapped twice: " + t.rows[i][0]);
  return out;
}

std::vector<ControlItem> ReadControlPool(const std::filesystem::path &path) {
  const DelimitedTable t = ReadDelimited(path, {"clip_id", "expected"});
  std::vector<ControlItem> out;
  for (size_t i = 0; i < t.rows.size(); ++i)
    out.push_back({t.rows[i][0],
                   static_cast<int>(ParseInt(t.rows[i][1],
                                             Where(path.string(), t, i) +
                                                 " expected"))});
  return out;
}

std::map<std::string, double> ReadReferenceScores(
    const std::filesystem::path &path) {
  const DelimitedTable t = ReadDelimited(path, {"subject_id", "mos"});
  std::map<std::string, double> out;
  for (size_t i = 0; i < t.rows.size(); ++i)
    out[t.rows[i][0]] =
        ParseDouble(t.rows[i][1], Where(path.string(), t, i) + " mos");
  return out;
}

std::string FormatSummaries(const std::vector<ScoreSummary> &summaries) {
  std::vector<std::vector<std::string>> rows;
  for (const ScoreSummary &s : summaries)
    rows.push_back({s.subject_id, FormatDouble(s.mos), FormatDouble(s.ci95),
                    std::to_string(s.n)});
  return FormatDelimited({"subject_id", "mos", "ci95", "n"}, rows);
}

std::string FormatRejections(const std::vector<GroupRejection> &rejections) {
  std::vector<std::vector<std::string>> rows;
  for (const GroupRejection &r : rejections)
    rows.push_back({r.rater_id, r.group_id, std::string(RejectReasonName(r.reason))});
  return FormatDelimited({"rater_id", "group_id", "reason"}, rows);
}

}  // namespace dnsgen::p808
