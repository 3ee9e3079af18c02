/* Copyright 2026 The Senfuse Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// Audio front end: waveform in, 60x421x1 log-mel spectrogram out.
//
// Processing chain:
//   resample(22050) -> minmax_normalize -> stft_power -> mel_project
//   -> log_scale_and_fit
//
// STFT uses a periodic Hann window of 1024 samples, hop 512, no center
// padding. The mel filterbank is Slaney-style: linear below 1 kHz,
// logarithmic above, rows area-normalized, spanning 0..11025 Hz.

#ifndef SENFUSE_AUDIO_DSP_HPP_
#define SENFUSE_AUDIO_DSP_HPP_

#include <complex>
#include <vector>

#include "senfuse/tensor.hpp"
#include "senfuse/wav.hpp"

namespace senfuse::dsp {

inline constexpr int kTargetRate = 22050;
inline constexpr std::size_t kWindowSize = 1024;
inline constexpr std::size_t kHopSize = 512;
inline constexpr std::size_t kFreqBins = kWindowSize / 2 + 1;  // 513
inline constexpr std::size_t kMelBands = 60;
inline constexpr std::size_t kTimeFrames = 421;
inline constexpr double kMelFmin = 0.0;
inline constexpr double kMelFmax = 11025.0;
inline constexpr double kLogOffset = 1e-6;

// In-place iterative radix-2 FFT; size must be a power of two.
void fft_inplace(std::vector<std::complex<double>>& a);

// Linear-interpolation resampler. Output length is round(n * target / rate),
// so duration is preserved to within one sample.
AudioSignal resample(const AudioSignal& signal, int target_rate = kTargetRate);

// Affine map of [min, max] onto [-1, 1]. A constant signal maps to all zeros.
AudioSignal minmax_normalize(const AudioSignal& signal);

// Squared-magnitude spectrogram, shape [513 x F] with
// F = floor((N - 1024) / 512) + 1. Frame f covers samples [f*512, f*512+1024).
// Throws DomainError if the signal is shorter than one window.
Tensor stft_power(const AudioSignal& signal);

// The 60x513 triangular filterbank used by mel_project.
Tensor mel_filterbank();

// Index of the mel band whose triangular peak lies closest to hz.
std::size_t mel_band_of(double hz);

// Projects a [513 x F] power spectrogram onto 60 mel bands -> [60 x F].
Tensor mel_project(const Tensor& power);

// ln(mel + 1e-6), then the time axis is center-trimmed to 421 frames when
// longer, or edge-padded with ln(1e-6) when shorter. Output [60 x 421 x 1].
Tensor log_scale_and_fit(const Tensor& mel);

// Full pipeline for one clip.
Tensor compute_log_mel(const AudioSignal& signal);

}  // namespace senfuse::dsp

#endif  // SENFUSE_AUDIO_DSP_HPP_
