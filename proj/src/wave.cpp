// Copyright 2026 The SRK Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "srk/audio/wave.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "srk/common/error.hpp"

namespace srk::audio {

namespace {

uint32_t read_u32(const uint8_t* p) {
  return static_cast<uint32_t>(p[0]) | (static_cast<uint32_t>(p[1]) << 8) |
         (static_cast<uint32_t>(p[2]) << 16) | (static_cast<uint32_t>(p[3]) << 24);
}

uint16_t read_u16(const uint8_t* p) {
  return static_cast<uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xff));
  out.push_back(static_cast<uint8_t>((v >> 8) & 0xff));
  out.push_back(static_cast<uint8_t>((v >> 16) & 0xff));
  out.push_back(static_cast<uint8_t>((v >> 24) & 0xff));
}

void put_u16(std::vector<uint8_t>& out, uint16_t v) {
  out.push_back(static_cast<uint8_t>(v & 0xff));
  out.push_back(static_cast<uint8_t>((v >> 8) & 0xff));
}

}  // namespace

WaveData read_wave(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open audio file: " + path.string());
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                             std::istreambuf_iterator<char>());
  if (bytes.size() < 44 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw ParseError("not a RIFF/WAVE file: " + path.string());

  WaveData wave;
  uint16_t bits_per_sample = 0;
  uint16_t channels = 0;
  bool got_fmt = false;
  size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* chunk_id = reinterpret_cast<const char*>(bytes.data() + pos);
    const uint32_t chunk_size = read_u32(bytes.data() + pos + 4);
    const size_t body = pos + 8;
    if (body + chunk_size > bytes.size())
      throw ParseError("truncated WAVE chunk in " + path.string());
    if (std::memcmp(chunk_id, "fmt ", 4) == 0) {
      if (chunk_size < 16) throw ParseError("bad fmt chunk in " + path.string());
      const uint16_t format = read_u16(bytes.data() + body);
      channels = read_u16(bytes.data() + body + 2);
      wave.sample_rate = static_cast<int>(read_u32(bytes.data() + body + 4));
      bits_per_sample = read_u16(bytes.data() + body + 14);
      if (format != 1) throw ParseError("only PCM WAVE supported: " + path.string());
      got_fmt = true;
    } else if (std::memcmp(chunk_id, "data", 4) == 0) {
      if (!got_fmt) throw ParseError("data chunk before fmt in " + path.string());
      if (channels != 1)
        throw ParseError("only mono WAVE supported: " + path.string());
      if (bits_per_sample != 16)
        throw ParseError("only 16-bit PCM WAVE supported: " + path.string());
      const size_t n = chunk_size / 2;
      wave.samples.resize(n);
      for (size_t i = 0; i < n; ++i) {
        int16_t s;
        std::memcpy(&s, bytes.data() + body + 2 * i, 2);
        wave.samples[i] = static_cast<double>(s) / 32768.0;
      }
      return wave;
    }
    pos = body + chunk_size + (chunk_size & 1);
  }
  throw ParseError("no data chunk in " + path.string());
}

void write_wave(const std::filesystem::path& path, const std::vector<double>& samples,
                int sample_rate) {
  if (sample_rate <= 0) throw ValidationError("write_wave: sample_rate must be positive");
  std::vector<uint8_t> out;
  out.reserve(44 + samples.size() * 2);
  const uint32_t data_bytes = static_cast<uint32_t>(samples.size() * 2);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put_u32(out, 36 + data_bytes);
  out.insert(out.end(), {'W', 'A', 'V', 'E', 'f', 'm', 't', ' '});
  put_u32(out, 16);
  put_u16(out, 1);  // PCM
  put_u16(out, 1);  // mono
  put_u32(out, static_cast<uint32_t>(sample_rate));
  put_u32(out, static_cast<uint32_t>(sample_rate * 2));
  put_u16(out, 2);
  put_u16(out, 16);
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put_u32(out, data_bytes);
  for (const double x : samples) {
    const double clamped = std::clamp(x, -1.0, 1.0);
    const int32_t q = static_cast<int32_t>(std::lround(clamped * 32767.0));
    const int16_t s = static_cast<int16_t>(std::clamp(q, -32768, 32767));
    out.push_back(static_cast<uint8_t>(s & 0xff));
    out.push_back(static_cast<uint8_t>((s >> 8) & 0xff));
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write audio file: " + path.string());
  f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!f) throw IoError("short write to audio file: " + path.string());
}

std::vector<double> resample_linear(const std::vector<double>& samples, int from_rate,
                                    int to_rate) {
  if (from_rate <= 0 || to_rate <= 0)
    throw ValidationError("resample_linear: rates must be positive");
  if (from_rate == to_rate || samples.empty()) return samples;
  const size_t n_out = static_cast<size_t>(std::llround(
      static_cast<double>(samples.size()) * to_rate / from_rate));
  std::vector<double> out(std::max<size_t>(n_out, 1));
  const double step = static_cast<double>(from_rate) / to_rate;
  for (size_t i = 0; i < out.size(); ++i) {
    const double src = static_cast<double>(i) * step;
    const size_t i0 = std::min(static_cast<size_t>(src), samples.size() - 1);
    const size_t i1 = std::min(i0 + 1, samples.size() - 1);
    const double frac = src - static_cast<double>(i0);
    out[i] = samples[i0] * (1.0 - frac) + samples[i1] * frac;
  }
  return out;
}

}  // namespace srk::audio
