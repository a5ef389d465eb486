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

#ifndef DNSGEN_DELIMITED_H_
#define DNSGEN_DELIMITED_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace dnsgen {

// Comma-delimited text with a mandatory header row. No quoting: fields may
// not contain commas or newlines.
struct DelimitedTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<size_t> line_numbers;  // 1-based source line of each row

  // Column index by name; throws kData if absent.
  size_t Column(std::string_view name) const;
};

std::vector<std::string> SplitFields(std::string_view line, char delim = ',');

// Throws kIo if unreadable, kData if the header does not start with
// `required_columns` in order or a row has the wrong field count.
DelimitedTable ReadDelimited(const std::filesystem::path &path,
                             const std::vector<std::string> &required_columns);
DelimitedTable ParseDelimited(std::string_view text,
                              const std::vector<std::string> &required_columns,
                              std::string_view source_name = "<input>");

// Writes header + rows. Throws kArgument on a field containing a delimiter.
void WriteDelimited(const std::filesystem::path &path,
                    const std::vector<std::string> &header,
                    const std::vector<std::vector<std::string>> &rows);
std::string FormatDelimited(const std::vector<std::string> &header,
                            const std::vector<std::vector<std::string>> &rows);

// Locale-independent numeric parsing; throws kData with `what` in the message.
double ParseDouble(std::string_view text, std::string_view what);
long long ParseInt(std::string_view text, std::string_view what);
unsigned long long ParseUint(std::string_view text, std::string_view what);

// Shortest representation that round-trips.
std::string FormatDouble(double value);

// Throws kIo if unreadable.
std::string ReadTextFile(const std::filesystem::path &path);

// Writes bytes atomically enough for our purposes (temp file + rename).
void WriteTextFile(const std::filesystem::path &path, std::string_view text);

}  // namespace dnsgen

#endif  // DNSGEN_DELIMITED_H_
