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

#ifndef SRK_AUDIO_VAD_HPP_
#define SRK_AUDIO_VAD_HPP_

#include <span>
#include <vector>

namespace srk::audio {

// A voiced region in seconds.
struct Span {
  double start_s = 0.0;
  double end_s = 0.0;
  double length_s() const { return end_s - start_s; }
};

// Adaptive energy detector. Frame energies are compared against the
// recording's peak frame energy, so the detector is gain-invariant.
struct VadConfig {
  double frame_ms = 25.0;
  double hop_ms = 10.0;
  double energy_threshold_db = -35.0;  // relative to peak frame energy
  double min_voiced_ms = 200.0;
  double min_gap_ms = 300.0;

  void validate() const;
};

// Returns disjoint, time-ordered voiced spans. Voiced runs shorter than
// min_voiced_ms are dropped, then surviving spans closer than min_gap_ms
// are merged. Silence (or an empty threshold pass) yields an empty list.
std::vector<Span> vad_segment(std::span<const double> samples, int sample_rate,
                              const VadConfig& config = {});

// Concatenates the sample ranges of the given ordered spans.
std::vector<double> remove_pauses(std::span<const double> samples, int sample_rate,
                                  const std::vector<Span>& spans);

}  // namespace srk::audio

#endif  // SRK_AUDIO_VAD_HPP_
