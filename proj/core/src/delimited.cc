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

#include "dnsgen/delimited.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include "dnsgen/error.h"

namespace dnsgen {

size_t DelimitedTable::Column(std::string_view name) const {
  for (size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return i;
  throw Error(ErrorCode::kData, "missing column '" + std::string(name) + "'");
}

std::vector<std::string> SplitFields(std::string_view line, char delim) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    const size_t end = line.find(delim, start);
    if (end == std::string_view::npos) {
      fields.emplace_back(line.substr(start));
      break;
    }
    fields.emplace_back(line.substr(start, end - start));
    start = end + 1;
  }
  return fields;
}

DelimitedTable ParseDelimited(std::string_view text,
                              const std::vector<std::string> &required_columns,
                              std::string_view source_name) {
  DelimitedTable table;
  const std::string source(source_name);
  size_t line_no = 0;
  size_t pos = 0;
  bool have_header = false;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      if (end == text.size()) break;
      continue;
    }
    std::vector<std::string> fields = SplitFields(line);
    if (!have_header) {
      for (size_t i = 0; i < required_columns.size(); ++i) {
        if (i >= fields.size() || fields[i] != required_columns[i])
          throw Error(ErrorCode::kData,
                      source + ": header must start with '" +
                          required_columns[i] + "' at column " +
                          std::to_string(i + 1));
      }
      table.header = std::move(fields);
      have_header = true;
    } else {
      if (fields.size() != table.header.size())
        throw Error(ErrorCode::kData,
                    source + ":" + std::to_string(line_no) + ": expected " +
                        std::to_string(table.header.size()) + " fields, got " +
                        std::to_string(fields.size()));
      table.rows.push_back(std::move(fields));
      table.line_numbers.push_back(line_no);
    }
    if (end == text.size()) break;
  }
  if (!have_header)
    throw Error(ErrorCode::kData, source + ": missing header row");
  return table;
}

std::string ReadTextFile(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

DelimitedTable ReadDelimited(const std::filesystem::path &path,
                             const std::vector<std::string> &required_columns) {
  return ParseDelimited(ReadTextFile(path), required_columns, path.string());
}

std::string FormatDelimited(const std::vector<std::string> &header,
                            const std::vector<std::vector<std::string>> &rows) {
  std::string out;
  auto append_row = [&out](const std::vector<std::string> &row) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (row[i].find_first_of(",\n\r") != std::string::npos)
        throw Error(ErrorCode::kArgument,
                    "field contains a delimiter: '" + row[i] + "'");
      if (i) out += ',';
      out += row[i];
    }
    out += '\n';
  };
  append_row(header);
  for (const auto &row : rows) append_row(row);
  return out;
}

void WriteDelimited(const std::filesystem::path &path,
                    const std::vector<std::string> &header,
                    const std::vector<std::vector<std::string>> &rows) {
  WriteTextFile(path, FormatDelimited(header, rows));
}

double ParseDouble(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw Error(ErrorCode::kData, "invalid number for " + std::string(what) +
                                      ": '" + std::string(text) + "'");
  return value;
}

long long ParseInt(std::string_view text, std::string_view what) {
  long long value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw Error(ErrorCode::kData, "invalid integer for " + std::string(what) +
                                      ": '" + std::string(text) + "'");
  return value;
}

unsigned long long ParseUint(std::string_view text, std::string_view what) {
  unsigned long long value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty())
    throw Error(ErrorCode::kData, "invalid unsigned integer for " +
                                      std::string(what) + ": '" +
                                      std::string(text) + "'");
  return value;
}

std::string FormatDouble(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc())
    throw Error(ErrorCode::kArgument, "cannot format number");
  return std::string(buf, ptr);
}

void WriteTextFile(const std::filesystem::path &path, std::string_view text) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out)
      throw Error(ErrorCode::kIo, "cannot open " + tmp.string() + " for writing");
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
    if (!out) throw Error(ErrorCode::kIo, "write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec)
    throw Error(ErrorCode::kIo,
                "cannot rename " + tmp.string() + ": " + ec.message());
}

}  // namespace dnsgen
