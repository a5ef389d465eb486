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

// Reference frame processors for exercising the real-time harness. Shared by
// the rt_fixture binary and the tests.

#ifndef DNSGEN_TOOLS_FIXTURES_RT_FIXTURES_H_
#define DNSGEN_TOOLS_FIXTURES_RT_FIXTURES_H_

#include <algorithm>
#include <chrono>
#include <span>
#include <thread>
#include <vector>

#include "dnsgen/error.h"
#include "dnsgen/rtcheck.h"

namespace dnsgen::fixtures {

class Passthrough : public rt::FrameProcessor {
 public:
  explicit Passthrough(int frame_ms = 20) : frame_ms_(frame_ms) {}
  int frame_ms() const override { return frame_ms_; }
  int lookahead_ms() const override { return 0; }
  void Reset() override {}
  void Process(std::span<const float> in, std::span<float> out) override {
    std::copy(in.begin(), in.end(), out.begin());
  }

 private:
  int frame_ms_;
};

// Passthrough that burns wall time on every frame.
class Sleeper : public Passthrough {
 public:
  Sleeper(double sleep_ms, int frame_ms = 20)
      : Passthrough(frame_ms), sleep_ms_(sleep_ms) {}
  void Process(std::span<const float> in, std::span<float> out) override {
    std::this_thread::sleep_for(std::chrono::duration<double, std::milli>(sleep_ms_));
    Passthrough::Process(in, out);
  }

 private:
  double sleep_ms_;
};

// y[n] = mean(x[n+1 .. n+W]) with W = window_ms of samples, so the output
// genuinely depends on window_ms of future input. Declares lookahead equal
// to the window and emits with ceil(window/frame) frames of delay.
class FutureAverage : public rt::FrameProcessor {
 public:
  FutureAverage(int window_ms, int frame_ms = 20, int sample_rate = 16000)
      : window_ms_(window_ms),
        frame_ms_(frame_ms),
        frame_(static_cast<size_t>(frame_ms) * sample_rate / 1000),
        window_(static_cast<size_t>(window_ms) * sample_rate / 1000),
        delay_((window_ms + frame_ms - 1) / frame_ms) {
    if (window_ms <= 0 || frame_ms <= 0)
      throw Error(ErrorCode::kArgument, "FutureAverage: window and frame must be > 0");
    Reset();
  }

  int frame_ms() const override { return frame_ms_; }
  int lookahead_ms() const override { return window_ms_; }

  void Reset() override {
    prefix_.assign(1, 0.0);
    calls_ = 0;
  }

  void Process(std::span<const float> in, std::span<float> out) override {
    for (float x : in) prefix_.push_back(prefix_.back() + x);
    const size_t k = calls_++;
    if (k < delay_) {
      std::fill(out.begin(), out.end(), 0.0f);
      return;
    }
    const size_t start = (k - delay_) * frame_;
    for (size_t i = 0; i < frame_; ++i) {
      const size_t n = start + i;
      // sum of x[n+1 .. n+W] is prefix[n+W+1] - prefix[n+1]
      const double sum = prefix_[n + window_ + 1] - prefix_[n + 1];
      out[i] = static_cast<float>(sum / static_cast<double>(window_));
    }
  }

 private:
  int window_ms_, frame_ms_;
  size_t frame_, window_, delay_;
  std::vector<double> prefix_;
  size_t calls_ = 0;
};

}  // namespace dnsgen::fixtures

#endif  // DNSGEN_TOOLS_FIXTURES_RT_FIXTURES_H_
