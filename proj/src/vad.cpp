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

#include "srk/audio/vad.hpp"

#include <algorithm>
#include <cmath>

#include "srk/common/error.hpp"

namespace srk::audio {

void VadConfig::validate() const {
  if (frame_ms <= 0 || hop_ms <= 0 || min_voiced_ms <= 0 || min_gap_ms <= 0)
    throw ValidationError("VadConfig: durations must be positive");
  if (hop_ms > frame_ms) throw ValidationError("VadConfig: hop_ms must not exceed frame_ms");
}

std::vector<Span> vad_segment(std::span<const double> samples, int sample_rate,
                              const VadConfig& config) {
  config.validate();
  if (samples.empty()) throw ValidationError("vad_segment: empty samples");
  if (sample_rate <= 0) throw ValidationError("vad_segment: sample_rate must be positive");

  const size_t frame_len = std::max<size_t>(1, static_cast<size_t>(
      std::llround(config.frame_ms * sample_rate / 1000.0)));
  const size_t hop_len = std::max<size_t>(1, static_cast<size_t>(
      std::llround(config.hop_ms * sample_rate / 1000.0)));
  const size_t n_frames = samples.size() <= frame_len
                              ? 1
                              : 1 + (samples.size() - frame_len + hop_len - 1) / hop_len;

  std::vector<double> energies(n_frames, 0.0);
  double peak = 0.0;
  for (size_t f = 0; f < n_frames; ++f) {
    const size_t begin = f * hop_len;
    const size_t end = std::min(begin + frame_len, samples.size());
    double acc = 0.0;
    for (size_t i = begin; i < end; ++i) acc += samples[i] * samples[i];
    energies[f] = acc / static_cast<double>(std::max<size_t>(1, end - begin));
    peak = std::max(peak, energies[f]);
  }
  if (peak <= 0.0) return {};  // digital silence

  std::vector<bool> voiced(n_frames);
  for (size_t f = 0; f < n_frames; ++f) {
    const double rel_db = 10.0 * std::log10(std::max(energies[f], 1e-30) / peak);
    voiced[f] = rel_db > config.energy_threshold_db;
  }

  const double hop_s = static_cast<double>(hop_len) / sample_rate;
  const double frame_s = static_cast<double>(frame_len) / sample_rate;
  const double duration_s = static_cast<double>(samples.size()) / sample_rate;

  // Voiced frame runs -> candidate spans.
  std::vector<Span> spans;
  size_t f = 0;
  while (f < n_frames) {
    if (!voiced[f]) {
      ++f;
      continue;
    }
    size_t run_end = f;
    while (run_end + 1 < n_frames && voiced[run_end + 1]) ++run_end;
    Span s{static_cast<double>(f) * hop_s,
           std::min(static_cast<double>(run_end) * hop_s + frame_s, duration_s)};
    spans.push_back(s);
    f = run_end + 1;
  }

  // Drop runs shorter than min_voiced_ms, then merge gaps below min_gap_ms.
  const double min_voiced_s = config.min_voiced_ms / 1000.0;
  const double min_gap_s = config.min_gap_ms / 1000.0;
  std::vector<Span> kept;
  for (const Span& s : spans)
    if (s.length_s() >= min_voiced_s) kept.push_back(s);

  std::vector<Span> merged;
  for (const Span& s : kept) {
    if (!merged.empty() && s.start_s - merged.back().end_s < min_gap_s)
      merged.back().end_s = s.end_s;
    else
      merged.push_back(s);
  }
  return merged;
}

std::vector<double> remove_pauses(std::span<const double> samples, int sample_rate,
                                  const std::vector<Span>& spans) {
  if (sample_rate <= 0) throw ValidationError("remove_pauses: sample_rate must be positive");
  double previous_end = 0.0;
  std::vector<double> out;
  for (const Span& s : spans) {
    if (s.end_s <= s.start_s) throw ValidationError("remove_pauses: invalid span");
    if (s.start_s < previous_end) throw ValidationError("remove_pauses: spans not ordered");
    const auto begin = static_cast<size_t>(std::llround(s.start_s * sample_rate));
    const auto end = static_cast<size_t>(std::llround(s.end_s * sample_rate));
    if (end > samples.size()) throw ValidationError("remove_pauses: span out of bounds");
    out.insert(out.end(), samples.begin() + static_cast<ptrdiff_t>(begin),
               samples.begin() + static_cast<ptrdiff_t>(end));
    previous_end = s.end_s;
  }
  return out;
}

}  // namespace srk::audio
