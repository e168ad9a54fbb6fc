// Copyright 2026 The stx Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace stx::audio {

struct Waveform {
  std::vector<double> samples;
  int sample_rate = 8000;

  double duration() const { return static_cast<double>(samples.size()) / sample_rate; }
};

struct MelConfig {
  int sample_rate = 8000;
  int frame_length = 200;  // 25 ms
  int hop = 80;            // 10 ms
  int num_mel = 20;
  double fmin = 0.0;
  double fmax = 4000.0;
  double log_floor = 1e-6;

  // 80 channels at 16 kHz.
  static MelConfig wideband();

  int fft_size() const;
  std::string fingerprint() const;
  void validate() const;
};

// frames x channels, row-major.
struct FeatureSequence {
  int frames = 0;
  int channels = 0;
  double frame_shift = 0.0;
  std::string mel_fingerprint;
  std::vector<double> values;

  double at(int frame, int channel) const {
    return values[static_cast<std::size_t>(frame) * channels + channel];
  }
};

int num_frames(std::size_t num_samples, const MelConfig& cfg);
double hz_to_mel(double hz);
double mel_to_hz(double mel);

// Magnitude STFT (Hann window, zero-padded FFT) -> triangular mel filterbank
// -> log(max(energy, floor)).
FeatureSequence extract_features(const Waveform& wave, const MelConfig& cfg);

// In-place radix-2 FFT; size must be a power of two.
void fft(std::vector<double>& re, std::vector<double>& im);

// Output = (wave * rir) truncated to the input length, plus white Gaussian
// noise scaled so the realized SNR against the convolved signal is exactly
// snr_db. An infinite snr_db adds no noise and draws nothing from rng. The
// result is peak-normalized only when it would clip.
Waveform augment(const Waveform& wave, double snr_db,
                 std::optional<std::span<const double>> rir, std::mt19937_64& rng);

// h[0] = 1 followed by Gaussian taps under an exponential envelope that falls
// 60 dB over `decay_seconds`. Zero decay yields the unit impulse.
std::vector<double> exponential_rir(double decay_seconds, int sample_rate,
                                    std::mt19937_64& rng);

struct AugmentConfig {
  bool enabled = true;
  double snr_min_db = 10.0;
  double snr_max_db = 30.0;
  double decay_max_seconds = 0.2;
};

// Draws SNR and reverb decay uniformly from the configured ranges.
Waveform augment_random(const Waveform& wave, const AugmentConfig& cfg,
                        std::mt19937_64& rng);

// Mean over voiced frames of geometric/arithmetic mean of the power spectrum.
double spectral_flatness(const Waveform& wave, const MelConfig& cfg);

// Rounds every sample to float32 precision, which is what the raw on-disk
// format stores.
void quantize_to_float(Waveform& wave);

// `<stem>.f32` little-endian float32 samples plus `<stem>.json`
// {"sample_rate", "length"}.
void save_waveform(const std::filesystem::path& stem, const Waveform& wave);
Waveform load_waveform(const std::filesystem::path& stem);

}  // namespace stx::audio
