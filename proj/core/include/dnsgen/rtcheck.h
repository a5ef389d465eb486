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

#ifndef DNSGEN_RTCHECK_H_
#define DNSGEN_RTCHECK_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "dnsgen/audio.h"

namespace dnsgen::rt {

inline constexpr int kMaxFrameMs = 40;
inline constexpr int kMaxLookaheadMs = 40;
inline constexpr double kNearTieMos = 0.1;

// Streaming limits for a submission. The compute budget is half the frame.
struct StreamConstraints {
  int frame_ms = 20;
  int lookahead_ms = kMaxLookaheadMs;
  int sample_rate = kCanonicalSampleRate;

  double budget_ms() const { return frame_ms / 2.0; }
  bool WithinTrackOneLimits() const {
    return frame_ms <= kMaxFrameMs && lookahead_ms <= kMaxLookaheadMs;
  }
  size_t frame_samples() const;
  size_t lookahead_samples() const;
};

// Frame-in/frame-out enhancer. A processor that declares lookahead L emits,
// on call k, the output for frame k - ceil(L / frame): its output stream is
// delayed by the lookahead it consumes. Past state is unrestricted.
class FrameProcessor {
 public:
  virtual ~FrameProcessor() = default;
  virtual int frame_ms() const = 0;
  virtual int lookahead_ms() const = 0;
  // Return to a fresh state, as if newly constructed.
  virtual void Reset() = 0;
  // in.size() == out.size() == one frame.
  virtual void Process(std::span<const float> in, std::span<float> out) = 0;
};

// Output delay in frames implied by the processor's declared lookahead.
size_t DelayFrames(const FrameProcessor &proc);

// Streams `signal` (whole frames only) through a freshly reset processor,
// flushes the delay with zero frames and returns the time-aligned output.
std::vector<float> RunAligned(FrameProcessor &proc, std::span<const float> signal);

struct ProbeOptions {
  size_t trials = 50;
  double signal_seconds = 2.0;
  uint64_t seed = 0;
};

struct ProbeTrial {
  size_t boundary_frame = 0;  // t: signals agree up to (t+1)*frame + lookahead
  std::optional<size_t> first_violation;  // first aligned frame <= t that differs
};

struct ProbeReport {
  std::vector<ProbeTrial> trials;

  size_t flagged() const;
  bool pass() const { return flagged() == 0; }
  // First violation across trials, if any.
  std::optional<ProbeTrial> first_violation() const;
};

// Randomized causality probe. Each trial runs a seeded random signal A and a
// signal B equal to A only up to sample (t+1)*frame + lookahead; aligned
// outputs for frames 0..t must match bit for bit. Processor exceptions are
// rethrown as kHarness with the trial number.
ProbeReport ProbeLookahead(FrameProcessor &proc,
                           const StreamConstraints &constraints,
                           const ProbeOptions &options = {});

struct TimingReport {
  double mean_ms = 0.0;
  double p50_ms = 0.0;
  double p95_ms = 0.0;
  double max_ms = 0.0;
  double budget_ms = 0.0;
  size_t frames = 0;
  bool pass = false;  // mean_ms < budget_ms
  std::string host;
};

// Nearest-rank percentile of an unsorted sample, p in (0, 100].
double Percentile(std::vector<double> values, double p);

// Wall-clock time per Process call on the calling thread, warmup excluded.
// Throws kArgument if the clip holds fewer than warmup + 100 frames.
TimingReport MeasureBudget(FrameProcessor &proc, const AudioClip &clip,
                           const StreamConstraints &constraints,
                           size_t warmup_frames = 10);

// CPU model and core count, for reports; budgets are hardware relative.
std::string HostDescriptor();

// 1 iff the budget holds and frame/lookahead are within the track-1 caps.
int ClassifyTrack(const StreamConstraints &constraints, const TimingReport &timing);

struct SubmissionEntry {
  std::string entry_id;
  double mos = 0.0;
  uint64_t param_count = 0;
  double per_frame_ms = 0.0;
  int track = 1;

  friend bool operator==(const SubmissionEntry &,
                         const SubmissionEntry &) = default;
};

// (param_count, per_frame_ms, entry_id) ordering.
bool LessComplex(const SubmissionEntry &a, const SubmissionEntry &b);
bool IsNearTie(double mos_a, double mos_b);

// MOS descending, then adjacent passes swapping near-tied neighbours when the
// lower-ranked entry is strictly less complex, until nothing moves.
// Throws kArgument on mixed tracks or MOS outside [1, 5].
std::vector<SubmissionEntry> Rank(std::vector<SubmissionEntry> entries);

// `entry_id,mos,param_count,per_frame_ms,track`.
std::vector<SubmissionEntry> ReadEntries(const std::filesystem::path &path);
std::vector<SubmissionEntry> ParseEntries(std::string_view text,
                                          std::string_view source_name = "<entries>");
std::string FormatEntries(const std::vector<SubmissionEntry> &entries);

// Child process speaking the plug-in protocol: it prints
// `frame_ms=<int> lookahead_ms=<int>` on startup, then for every frame of
// little-endian float32 samples on stdin writes one frame to stdout.
class SubprocessProcessor : public FrameProcessor {
 public:
  // command_line runs under /bin/sh -c. A child that stays silent for
  // timeout_ms while a header or frame is due is a harness error.
  explicit SubprocessProcessor(std::string command_line,
                               int sample_rate = kCanonicalSampleRate,
                               int timeout_ms = 10000);
  ~SubprocessProcessor() override;
  SubprocessProcessor(const SubprocessProcessor &) = delete;
  SubprocessProcessor &operator=(const SubprocessProcessor &) = delete;

  int frame_ms() const override { return frame_ms_; }
  int lookahead_ms() const override { return lookahead_ms_; }
  void Reset() override;
  void Process(std::span<const float> in, std::span<float> out) override;

 private:
  void Start();
  void Stop();

  std::string command_line_;
  int sample_rate_;
  int timeout_ms_;
  int frame_ms_ = 0;
  int lookahead_ms_ = 0;
  int pid_ = -1;
  int to_child_ = -1;
  int from_child_ = -1;
};

// Parses the startup header; throws kHarness when malformed.
void ParseProcessorHeader(std::string_view line, int *frame_ms, int *lookahead_ms);

}  // namespace dnsgen::rt

#endif  // DNSGEN_RTCHECK_H_
