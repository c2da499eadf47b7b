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

#ifndef SRK_AUDIO_WAVE_HPP_
#define SRK_AUDIO_WAVE_HPP_

#include <filesystem>
#include <string>
#include <vector>

namespace srk::audio {

struct WaveData {
  std::vector<double> samples;  // mono, in [-1, 1]
  int sample_rate = 0;
};

// RIFF/WAVE PCM 16-bit mono only; anything else is an IoError/ParseError.
WaveData read_wave(const std::filesystem::path& path);
void write_wave(const std::filesystem::path& path, const std::vector<double>& samples,
                int sample_rate);

// Linear-interpolation resampler; adequate for the toy pipeline.
std::vector<double> resample_linear(const std::vector<double>& samples, int from_rate,
                                    int to_rate);

}  // namespace srk::audio

#endif  // SRK_AUDIO_WAVE_HPP_
