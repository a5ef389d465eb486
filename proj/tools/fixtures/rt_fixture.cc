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

// Test processor speaking the verify-rt frame protocol on stdin/stdout.
//
// Usage: rt_fixture passthrough
//        rt_fixture lookahead <window-ms>
//        rt_fixture sleep <ms-per-frame>

#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <vector>

#include "rt_fixtures.h"

int main(int argc, char *argv[]) {
  using namespace dnsgen::fixtures;
  const std::string mode = argc > 1 ? argv[1] : "";
  const double arg = argc > 2 ? std::atof(argv[2]) : 0.0;
  std::unique_ptr<dnsgen::rt::FrameProcessor> proc;
  if (mode == "passthrough") {
    proc = std::make_unique<Passthrough>();
  } else if (mode == "lookahead" && arg > 0) {
    proc = std::make_unique<FutureAverage>(static_cast<int>(arg));
  } else if (mode == "sleep" && arg > 0) {
    proc = std::make_unique<Sleeper>(arg);
  } else {
    std::fprintf(stderr, "usage: rt_fixture passthrough | lookahead <ms> | sleep <ms>\n");
    return 2;
  }
  std::printf("frame_ms=%d lookahead_ms=%d\n", proc->frame_ms(), proc->lookahead_ms());
  std::fflush(stdout);

  const size_t frame = static_cast<size_t>(proc->frame_ms()) * 16;
  std::vector<float> in(frame), out(frame);
  while (std::fread(in.data(), sizeof(float), frame, stdin) == frame) {
    proc->Process(in, out);
    if (std::fwrite(out.data(), sizeof(float), frame, stdout) != frame) return 1;
    std::fflush(stdout);
  }
  return 0;
}
