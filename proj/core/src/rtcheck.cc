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

#include "dnsgen/rtcheck.h"

#include <pthread.h>
#include <sched.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <numeric>
#include <thread>

#include "dnsgen/delimited.h"
#include "dnsgen/error.h"
#include "dnsgen/rng.h"

namespace dnsgen::rt {

size_t StreamConstraints::frame_samples() const {
  if (frame_ms <= 0 || sample_rate <= 0)
    throw Error(ErrorCode::kArgument, "frame_ms and sample_rate must be positive");
  return static_cast<size_t>(static_cast<long long>(sample_rate) * frame_ms / 1000);
}

size_t StreamConstraints::lookahead_samples() const {
  if (lookahead_ms < 0)
    throw Error(ErrorCode::kArgument, "lookahead_ms must be >= 0");
  return static_cast<size_t>(static_cast<long long>(sample_rate) * lookahead_ms / 1000);
}

size_t DelayFrames(const FrameProcessor &proc) {
  if (proc.frame_ms() <= 0)
    throw Error(ErrorCode::kHarness, "processor declares a non-positive frame");
  if (proc.lookahead_ms() < 0)
    throw Error(ErrorCode::kHarness, "processor declares negative lookahead");
  return static_cast<size_t>((proc.lookahead_ms() + proc.frame_ms() - 1) /
                             proc.frame_ms());
}

std::vector<float> RunAligned(FrameProcessor &proc, std::span<const float> signal) {
  const StreamConstraints c{proc.frame_ms(), proc.lookahead_ms()};
  const size_t frame = c.frame_samples();
  const size_t frames = signal.size() / frame;
  const size_t delay = DelayFrames(proc);
  proc.Reset();
  std::vector<float> out(frames * frame, 0.0f);
  std::vector<float> zeros(frame, 0.0f), buffer(frame);
  for (size_t k = 0; k < frames + delay; ++k) {
    const std::span<const float> in =
        k < frames ? signal.subspan(k * frame, frame) : std::span<const float>(zeros);
    proc.Process(in, buffer);
    if (k >= delay)
      std::copy(buffer.begin(), buffer.end(), out.begin() + (k - delay) * frame);
  }
  return out;
}

size_t ProbeReport::flagged() const {
  return static_cast<size_t>(std::count_if(trials.begin(), trials.end(),
      [](const ProbeTrial &t) { return t.first_violation.has_value(); }));
}

std::optional<ProbeTrial> ProbeReport::first_violation() const {
  for (const ProbeTrial &t : trials)
    if (t.first_violation) return t;
  return std::nullopt;
}

ProbeReport ProbeLookahead(FrameProcessor &proc,
                           const StreamConstraints &constraints,
                           const ProbeOptions &options) {
  if (proc.frame_ms() != constraints.frame_ms)
    throw Error(ErrorCode::kArgument,
                "processor frame " + std::to_string(proc.frame_ms()) +
                    " ms differs from constraint frame " +
                    std::to_string(constraints.frame_ms) + " ms");
  const size_t frame = constraints.frame_samples();
  const size_t lookahead = constraints.lookahead_samples();
  const size_t frames = static_cast<size_t>(
      options.signal_seconds * constraints.sample_rate) / frame;
  const size_t total = frames * frame;
  // Need (t+1)*frame + lookahead < total so that B actually differs.
  if (total <= frame + lookahead)
    throw Error(ErrorCode::kArgument, "probe signal too short for the lookahead");
  const size_t max_t = (total - lookahead - 1) / frame - 1;

  ProbeReport report;
  for (size_t trial = 0; trial < options.trials; ++trial) {
    Rng rng(DeriveSeed(options.seed, trial));
    std::vector<float> a(total);
    for (float &s : a) s = static_cast<float>(rng.Uniform(-0.5, 0.5));
    ProbeTrial result;
    result.boundary_frame = static_cast<size_t>(rng.Below(max_t + 1));
    const size_t boundary = (result.boundary_frame + 1) * frame + lookahead;
    std::vector<float> b = a;
    for (size_t i = boundary; i < total; ++i)
      b[i] = static_cast<float>(rng.Uniform(-0.5, 0.5));

    std::vector<float> out_a, out_b;
    try {
      out_a = RunAligned(proc, a);
      out_b = RunAligned(proc, b);
    } catch (const Error &e) {
      throw Error(ErrorCode::kHarness,
                  "probe trial " + std::to_string(trial) + ": " + e.what());
    } catch (const std::exception &e) {
      throw Error(ErrorCode::kHarness, "probe trial " + std::to_string(trial) +
                                           ": processor failed: " + e.what());
    }
    for (size_t f = 0; f <= result.boundary_frame; ++f) {
      if (std::memcmp(out_a.data() + f * frame, out_b.data() + f * frame,
                      frame * sizeof(float)) != 0) {
        result.first_violation = f;
        break;
      }
    }
    report.trials.push_back(result);
  }
  return report;
}

double Percentile(std::vector<double> values, double p) {
  if (values.empty()) throw Error(ErrorCode::kArgument, "percentile of nothing");
  if (!(p > 0.0 && p <= 100.0))
    throw Error(ErrorCode::kArgument, "percentile must be in (0, 100]");
  std::sort(values.begin(), values.end());
  const auto rank = static_cast<size_t>(std::ceil(p / 100.0 * values.size()));
  return values[std::max<size_t>(rank, 1) - 1];
}

namespace {

// Pins the calling thread to the CPU it is on; restores on destruction.
class ScopedPin {
 public:
  ScopedPin() {
    if (pthread_getaffinity_np(pthread_self(), sizeof(saved_), &saved_) != 0)
      return;
    const int cpu = sched_getcpu();
    if (cpu < 0) return;
    cpu_set_t one;
    CPU_ZERO(&one);
    CPU_SET(cpu, &one);
    pinned_ = pthread_setaffinity_np(pthread_self(), sizeof(one), &one) == 0;
  }
  ~ScopedPin() {
    if (pinned_) pthread_setaffinity_np(pthread_self(), sizeof(saved_), &saved_);
  }
  ScopedPin(const ScopedPin &) = delete;
  ScopedPin &operator=(const ScopedPin &) = delete;

 private:
  cpu_set_t saved_{};
  bool pinned_ = false;
};

}  // namespace

std::string HostDescriptor() {
  std::string model = "unknown cpu";
  std::ifstream in("/proc/cpuinfo");
  for (std::string line; std::getline(in, line);) {
    if (line.rfind("model name", 0) == 0) {
      const size_t colon = line.find(':');
      if (colon != std::string::npos) {
        model = line.substr(colon + 1);
        model.erase(0, model.find_first_not_of(' '));
      }
      break;
    }
  }
  return model + " x" + std::to_string(std::thread::hardware_concurrency());
}

TimingReport MeasureBudget(FrameProcessor &proc, const AudioClip &clip,
                           const StreamConstraints &constraints,
                           size_t warmup_frames) {
  if (proc.frame_ms() != constraints.frame_ms)
    throw Error(ErrorCode::kArgument, "processor frame differs from constraint frame");
  const size_t frame = constraints.frame_samples();
  const size_t frames = clip.size() / frame;
  if (frames < warmup_frames + 100)
    throw Error(ErrorCode::kArgument,
                "timing clip holds " + std::to_string(frames) + " frames, need " +
                    std::to_string(warmup_frames + 100));
  std::vector<float> signal(clip.samples().begin(), clip.samples().end());
  std::vector<float> out(frame);
  std::vector<double> times;
  times.reserve(frames - warmup_frames);

  proc.Reset();
  {
    ScopedPin pin;
    for (size_t k = 0; k < frames; ++k) {
      const std::span<const float> in(signal.data() + k * frame, frame);
      const auto t0 = std::chrono::steady_clock::now();
      try {
        proc.Process(in, out);
      } catch (const std::exception &e) {
        throw Error(ErrorCode::kHarness, "frame " + std::to_string(k) +
                                             ": processor failed: " + e.what());
      }
      const auto t1 = std::chrono::steady_clock::now();
      if (k >= warmup_frames)
        times.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
  }

  TimingReport r;
  r.frames = times.size();
  r.mean_ms = std::accumulate(times.begin(), times.end(), 0.0) / times.size();
  r.p50_ms = Percentile(times, 50.0);
  r.p95_ms = Percentile(times, 95.0);
  r.max_ms = *std::max_element(times.begin(), times.end());
  r.budget_ms = constraints.budget_ms();
  r.pass = r.mean_ms < r.budget_ms;
  r.host = HostDescriptor();
  return r;
}

int ClassifyTrack(const StreamConstraints &constraints, const TimingReport &timing) {
  return timing.pass && constraints.WithinTrackOneLimits() ? 1 : 2;
}

bool LessComplex(const SubmissionEntry &a, const SubmissionEntry &b) {
  if (a.param_count != b.param_count) return a.param_count < b.param_count;
  if (a.per_frame_ms != b.per_frame_ms) return a.per_frame_ms < b.per_frame_ms;
  return a.entry_id < b.entry_id;
}

bool IsNearTie(double mos_a, double mos_b) {
  // MOS values are decimal; absorb binary rounding at the 0.1 boundary.
  return std::abs(mos_a - mos_b) < kNearTieMos - 1e-9;
}

std::vector<SubmissionEntry> Rank(std::vector<SubmissionEntry> entries) {
  for (const SubmissionEntry &e : entries) {
    if (!(e.mos >= 1.0 && e.mos <= 5.0))
      throw Error(ErrorCode::kArgument, "entry " + e.entry_id + ": MOS outside [1, 5]");
    if (e.track != entries.front().track)
      throw Error(ErrorCode::kArgument, "entries from different tracks");
  }
  std::sort(entries.begin(), entries.end(),
            [](const SubmissionEntry &a, const SubmissionEntry &b) {
              if (a.mos != b.mos) return a.mos > b.mos;
              return LessComplex(a, b);
            });
  // Every swap removes one complexity inversion, so this terminates.
  bool moved = true;
  while (moved) {
    moved = false;
    for (size_t i = 0; i + 1 < entries.size(); ++i) {
      if (IsNearTie(entries[i].mos, entries[i + 1].mos) &&
          LessComplex(entries[i + 1], entries[i])) {
        std::swap(entries[i], entries[i + 1]);
        moved = true;
      }
    }
  }
  return entries;
}

std::vector<SubmissionEntry> ParseEntries(std::string_view text,
                                          std::string_view source_name) {
  const DelimitedTable t = ParseDelimited(
      text, {"entry_id", "mos", "param_count", "per_frame_ms", "track"}, source_name);
  std::vector<SubmissionEntry> out;
  for (size_t i = 0; i < t.rows.size(); ++i) {
    const auto &row = t.rows[i];
    const std::string where =
        std::string(source_name) + ":" + std::to_string(t.line_numbers[i]);
    SubmissionEntry e;
    e.entry_id = row[0];
    e.mos = ParseDouble(row[1], where + " mos");
    e.param_count = ParseUint(row[2], where + " param_count");
    e.per_frame_ms = ParseDouble(row[3], where + " per_frame_ms");
    e.track = static_cast<int>(ParseInt(row[4], where + " track"));
    if (e.track != 1 && e.track != 2)
      throw Error(ErrorCode::kData, where + ": track must be 1 or 2");
    if (!(e.per_frame_ms >= 0.0))
      throw Error(ErrorCode::kData, where + ": per_frame_ms must be >= 0");
    out.push_back(std::move(e));
  }
  return out;
}

std::vector<SubmissionEntry> ReadEntries(const std::filesystem::path &path) {
  return ParseEntries(ReadTextFile(path), path.string());
}

std::string FormatEntries(const std::vector<SubmissionEntry> &entries) {
  std::vector<std::vector<std::string>> rows;
  for (const SubmissionEntry &e : entries)
    rows.push_back({e.entry_id, FormatDouble(e.mos), std::to_string(e.param_count),
                    FormatDouble(e.per_frame_ms), std::to_string(e.track)});
  return FormatDelimited({"entry_id", "mos", "param_count", "per_frame_ms", "track"},
                         rows);
}

}  // namespace dnsgen::rt
