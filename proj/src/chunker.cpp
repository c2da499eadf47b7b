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

#include "srk/audio/chunker.hpp"

#include <algorithm>
#include <cmath>

#include "srk/common/error.hpp"

namespace srk::audio {

void ChunkPolicy::validate() const {
  if (window_s <= 0) throw ValidationError("ChunkPolicy: window_s must be positive");
  if (shift_s <= 0 || shift_s > window_s)
    throw ValidationError("ChunkPolicy: shift_s must be in (0, window_s]");
  if (min_tail_s <= 0) throw ValidationError("ChunkPolicy: min_tail_s must be positive");
}

namespace {

Chunk make_chunk(std::span<const double> samples, int rate, const std::string& subject_id,
                 int index, double start_s, double end_s) {
  Chunk c;
  c.subject_id = subject_id;
  c.index = index;
  c.start_s = start_s;
  c.end_s = end_s;
  const auto begin = static_cast<size_t>(std::llround(start_s * rate));
  const auto end = std::min(static_cast<size_t>(std::llround(end_s * rate)), samples.size());
  c.samples.assign(samples.begin() + static_cast<ptrdiff_t>(begin),
                   samples.begin() + static_cast<ptrdiff_t>(end));
  return c;
}

}  // namespace

std::vector<Chunk> chunk(std::span<const double> samples, int sample_rate,
                         const ChunkPolicy& policy, const std::string& subject_id,
                         std::vector<std::string>* warnings) {
  policy.validate();
  if (sample_rate <= 0) throw ValidationError("chunk: sample_rate must be positive");
  const double duration_s = static_cast<double>(samples.size()) / sample_rate;
  if (duration_s < policy.min_tail_s) {
    if (warnings != nullptr)
      warnings->push_back("chunk: recording '" + subject_id + "' shorter than min_tail_s, skipped");
    return {};
  }

  std::vector<Chunk> chunks;
  const double eps = 1e-9;
  double last_full_start = -1.0;
  for (double start = 0.0; start + policy.window_s <= duration_s + eps;
       start += policy.shift_s) {
    const double end = std::min(start + policy.window_s, duration_s);
    chunks.push_back(make_chunk(samples, sample_rate, subject_id,
                                static_cast<int>(chunks.size()), start, end));
    last_full_start = start;
  }

  if (chunks.empty()) {
    // Shorter than one window: a single chunk over the whole recording.
    chunks.push_back(make_chunk(samples, sample_rate, subject_id, 0, 0.0, duration_s));
    return chunks;
  }

  const double covered_end = last_full_start + policy.window_s;
  if (duration_s > covered_end + eps) {
    const double tail_start = last_full_start + policy.shift_s;
    if (duration_s - tail_start >= policy.min_tail_s - eps) {
      chunks.push_back(make_chunk(samples, sample_rate, subject_id,
                                  static_cast<int>(chunks.size()), tail_start, duration_s));
    }
  }
  return chunks;
}

}  // namespace srk::audio
