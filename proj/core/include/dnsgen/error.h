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

#ifndef DNSGEN_ERROR_H_
#define DNSGEN_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace dnsgen {

enum class ErrorCode {
  kArgument,      // precondition on an argument violated
  kFormat,        // unsupported container or sample format
  kCorruptFile,   // truncated or malformed file
  kIo,            // open/read/write failure
  kUndefinedSnr,  // no jointly active frames
  kMaterial,      // not enough source audio to fill a bed
  kPlan,          // test plan cannot be satisfied
  kData,          // inconsistent records (unknown group, unmapped clip, ...)
  kHarness,       // frame processor misbehaved
};

std::string_view ErrorCodeName(ErrorCode code);

// Single exception type for the library; callers branch on code().
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string &message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  // Same code, message prefixed with "<context>: ".
  Error WithContext(std::string_view context) const {
    return Error(code_, std::string(context) + ": " + what());
  }

 private:
  ErrorCode code_;
};

}  // namespace dnsgen

#endif  // DNSGEN_ERROR_H_
