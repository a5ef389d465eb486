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

#include "dnsgen/audio.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

#include "dnsgen/error.h"

namespace dnsgen {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kArgument: return "argument error";
    case ErrorCode::kFormat: return "format error";
    case ErrorCode::kCorruptFile: return "corrupt file";
    case ErrorCode::kIo: return "I/O error";
    case ErrorCode::kUndefinedSnr: return "undefined SNR";
    case ErrorCode::kMaterial: return "material error";
    case ErrorCode::kPlan: return "plan error";
    case ErrorCode::kData: return "data error";
    case ErrorCode::kHarness: return "harness error";
  }
  return "error";
}

AudioClip::AudioClip(std::vector<double> samples, int sample_rate)
    : samples_(std::move(samples)), sample_rate_(sample_rate) {
  if (sample_rate <= 0)
    throw Error(ErrorCode::kArgument,
                "sample rate must be positive, got " +
                    std::to_string(sample_rate));
}

double AudioClip::Peak() const {
  double peak = 0.0;
  for (double s : samples_) peak = std::max(peak, std::abs(s));
  return peak;
}

bool AudioClip::IsSilent() const {
  return std::all_of(samples_.begin(), samples_.end(),
                     [](double s) { return s == 0.0; });
}

double Level::dbfs() const {
  if (!value_) throw Error(ErrorCode::kArgument, "level is silent");
  return *value_;
}

Gain Gain::FromDb(double db) { return Gain{std::pow(10.0, db / 20.0)}; }

double Gain::db() const {
  if (!(value > 0.0))
    throw Error(ErrorCode::kArgument, "gain in dB undefined for gain <= 0");
  return 20.0 * std::log10(value);
}

double MeanSquare(std::span<const double> samples) {
  if (samples.empty()) return 0.0;
  double acc = 0.0;
  for (double s : samples) acc += s * s;
  return acc / static_cast<double>(samples.size());
}

Level PowerToLevel(double mean_square) {
  if (mean_square <= 0.0) return Level::Silent();
  return Level::Dbfs(10.0 * std::log10(mean_square));
}

namespace {

constexpr uint16_t kFormatPcm = 1;

uint16_t ReadU16(const uint8_t *p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

uint32_t ReadU32(const uint8_t *p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) |
         (static_cast<uint32_t>(p[3]) << 24);
}

void PutU16(std::vector<uint8_t> &out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xff));
  out.push_back(static_cast<uint8_t>(v >> 8));
}

void PutU32(std::vector<uint8_t> &out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<uint8_t>(v >> (8 * i)));
}

void PutTag(std::vector<uint8_t> &out, const char *tag) {
  out.insert(out.end(), tag, tag + 4);
}

}  // namespace

AudioClip ParseWav(std::span<const uint8_t> bytes) {
  if (bytes.size() < 12)
    throw Error(ErrorCode::kCorruptFile, "file too short for a RIFF header");
  if (std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw Error(ErrorCode::kFormat, "not a RIFF/WAVE file");

  size_t pos = 12;
  bool have_fmt = false;
  int sample_rate = 0;
  while (true) {
    if (pos + 8 > bytes.size())
      throw Error(ErrorCode::kCorruptFile,
                  have_fmt ? "missing data chunk" : "missing fmt chunk");
    const uint8_t *chunk = bytes.data() + pos;
    const uint32_t chunk_size = ReadU32(chunk + 4);
    const size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (chunk_size < 16 || body + chunk_size > bytes.size())
        throw Error(ErrorCode::kCorruptFile, "truncated fmt chunk");
      const uint8_t *fmt = bytes.data() + body;
      const uint16_t format_tag = ReadU16(fmt);
      const uint16_t channels = ReadU16(fmt + 2);
      const uint32_t rate = ReadU32(fmt + 4);
      const uint16_t bits = ReadU16(fmt + 14);
      if (format_tag != kFormatPcm)
        throw Error(ErrorCode::kFormat, "unsupported WAV format tag " +
                                            std::to_string(format_tag));
      if (channels != 1)
        throw Error(ErrorCode::kFormat,
                    "expected mono, got " + std::to_string(channels) +
                        " channels");
      if (bits != 16)
        throw Error(ErrorCode::kFormat, "unsupported bit depth " +
                                            std::to_string(bits) +
                                            " (16-bit PCM only)");
      if (rate == 0 || rate > 1000000)
        throw Error(ErrorCode::kFormat,
                    "invalid sample rate " + std::to_string(rate));
      sample_rate = static_cast<int>(rate);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt)
        throw Error(ErrorCode::kCorruptFile, "data chunk before fmt chunk");
      if (body + chunk_size > bytes.size())
        throw Error(ErrorCode::kCorruptFile,
                    "data chunk declares " + std::to_string(chunk_size) +
                        " bytes, only " + std::to_string(bytes.size() - body) +
                        " present");
      if (chunk_size % 2 != 0)
        throw Error(ErrorCode::kCorruptFile, "odd-sized 16-bit data chunk");
      std::vector<double> samples(chunk_size / 2);
      const uint8_t *data = bytes.data() + body;
      for (size_t i = 0; i < samples.size(); ++i) {
        const auto v = static_cast<int16_t>(ReadU16(data + 2 * i));
        samples[i] = static_cast<double>(v) / 32768.0;
      }
      return AudioClip(std::move(samples), sample_rate);
    }
    // Chunks are word aligned.
    pos = body + chunk_size + (chunk_size & 1u);
  }
}

AudioClip ReadWav(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  try {
    return ParseWav(bytes);
  } catch (const Error &e) {
    throw e.WithContext(path.string());
  }
}

int16_t QuantizeSample(double sample) {
  const double scaled = sample * 32768.0;
  // std::round rounds half away from zero.
  const double r = std::round(scaled);
  if (r >= 32767.0) return 32767;
  if (r <= -32768.0) return -32768;
  return static_cast<int16_t>(r);
}

std::vector<uint8_t> EncodeWav(const AudioClip &clip) {
  const uint64_t data_bytes = 2ull * clip.size();
  if (data_bytes > 0xffffffffull - 36)
    throw Error(ErrorCode::kArgument, "clip too long for a RIFF file");
  std::vector<uint8_t> out;
  out.reserve(44 + data_bytes);
  PutTag(out, "RIFF");
  PutU32(out, static_cast<uint32_t>(36 + data_bytes));
  PutTag(out, "WAVE");
  PutTag(out, "fmt ");
  PutU32(out, 16);
  PutU16(out, kFormatPcm);
  PutU16(out, 1);
  PutU32(out, static_cast<uint32_t>(clip.sample_rate()));
  PutU32(out, static_cast<uint32_t>(clip.sample_rate()) * 2);
  PutU16(out, 2);
  PutU16(out, 16);
  PutTag(out, "data");
  PutU32(out, static_cast<uint32_t>(data_bytes));
  for (double s : clip.samples())
    PutU16(out, static_cast<uint16_t>(QuantizeSample(s)));
  return out;
}

void WriteWav(const AudioClip &clip, const std::filesystem::path &path) {
  const std::vector<uint8_t> bytes = EncodeWav(clip);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char *>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out)
    throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

Level RmsDbfs(const AudioClip &clip) {
  if (clip.empty()) throw Error(ErrorCode::kArgument, "RMS of an empty clip");
  return PowerToLevel(MeanSquare(clip.samples()));
}

AudioClip ApplyGain(const AudioClip &clip, Gain gain) {
  if (!(gain.value >= 0.0))
    throw Error(ErrorCode::kArgument, "gain must be non-negative");
  std::vector<double> out(clip.samples().begin(), clip.samples().end());
  for (double &s : out) s *= gain.value;
  return AudioClip(std::move(out), clip.sample_rate());
}

LevelingGain SolveLevelingGain(std::span<const double> samples, Level target,
                               double headroom_peak) {
  if (target.silent())
    throw Error(ErrorCode::kArgument, "normalization target is silent");
  if (!(headroom_peak > 0.0))
    throw Error(ErrorCode::kArgument, "headroom peak must be positive");
  const Level current = PowerToLevel(MeanSquare(samples));
  if (current.silent())
    throw Error(ErrorCode::kArgument, "cannot normalize a silent clip");
  LevelingGain result;
  result.gain = Gain::FromDb(target.dbfs() - current.dbfs());
  double peak = 0.0;
  for (double s : samples) peak = std::max(peak, std::abs(s));
  if (peak * result.gain.value > headroom_peak) {
    result.gain.value = headroom_peak / peak;
    result.clipped = true;
  }
  return result;
}

NormalizeResult NormalizeToDbfs(const AudioClip &clip, Level target,
                                double headroom_peak) {
  if (clip.empty())
    throw Error(ErrorCode::kArgument, "cannot normalize an empty clip");
  const LevelingGain g = SolveLevelingGain(clip.samples(), target, headroom_peak);
  return NormalizeResult{ApplyGain(clip, g.gain), g.gain, g.clipped};
}

}  // namespace dnsgen
