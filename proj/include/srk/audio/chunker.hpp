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

#ifndef SRK_AUDIO_CHUNKER_HPP_
#define SRK_AUDIO_CHUNKER_HPP_

#include <span>
#include <string>
#include <vector>

namespace srk::audio {

struct Chunk {
  std::string subject_id;
  int index = 0;
  double start_s = 0.0;
  double end_s = 0.0;
  std::vector<double> samples;
};

struct ChunkPolicy {
  double window_s = 30.0;
  double shift_s = 10.0;
  double min_tail_s = 1.0;

  void validate() const;
};

// Sliding-window chunking. Full windows start at multiples of shift_s; if
// audio remains past the last full window, one shorter tail chunk covering
// [last_start + shift_s, duration) is emitted when it is at least
// min_tail_s long. A recording shorter than the window becomes a single
// chunk. A recording shorter than min_tail_s yields no chunks and a
// warning, when a warning sink is given.
std::vector<Chunk> chunk(std::span<const double> samples, int sample_rate,
                         const ChunkPolicy& policy = {},
                         const std::string& subject_id = "",
                         std::vector<std::string>* warnings = nullptr);

}  // namespace srk::audio

#endif  // SRK_AUDIO_CHUNKER_HPP_
