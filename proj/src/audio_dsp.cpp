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

#include "senfuse/audio_dsp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "senfuse/error.hpp"

namespace senfuse::dsp {
namespace {

double hz_to_mel(double hz) {
  // Linear up to 1 kHz, logarithmic above.
  if (hz < 1000.0) return hz * 3.0 / 200.0;
  return 15.0 + 27.0 * std::log(hz / 1000.0) / std::log(6.4);
}

double mel_to_hz(double mel) {
  if (mel < 15.0) return mel * 200.0 / 3.0;
  return 1000.0 * std::exp(std::log(6.4) / 27.0 * (mel - 15.0));
}

}  // namespace

void fft_inplace(std::vector<std::complex<double>>& a) {
  const std::size_t n = a.size();
  if (n == 0 || (n & (n - 1)) != 0) throw DomainError("fft size must be a power of two");
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -2.0 * std::numbers::pi / static_cast<double>(len);
    const std::complex<double> wl(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (std::size_t j = 0; j < len / 2; ++j) {
        const std::complex<double> u = a[i + j];
        const std::complex<double> v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

AudioSignal resample(const AudioSignal& signal, int target_rate) {
  if (signal.samples.empty()) throw DomainError("resample: empty signal");
  if (signal.sample_rate <= 0) throw DomainError("resample: non-positive sample rate");
  if (signal.sample_rate == target_rate) return signal;

  const std::size_t n = signal.samples.size();
  const auto out_n = static_cast<std::size_t>(std::llround(
      static_cast<double>(n) * target_rate / signal.sample_rate));
  AudioSignal out;
  out.sample_rate = target_rate;
  out.samples.resize(std::max<std::size_t>(out_n, 1));
  const double step = static_cast<double>(signal.sample_rate) / target_rate;
  for (std::size_t i = 0; i < out.samples.size(); ++i) {
    double pos = static_cast<double>(i) * step;
    if (pos > static_cast<double>(n - 1)) pos = static_cast<double>(n - 1);
    const auto i0 = static_cast<std::size_t>(pos);
    const std::size_t i1 = std::min(i0 + 1, n - 1);
    const double frac = pos - static_cast<double>(i0);
    out.samples[i] = static_cast<float>((1.0 - frac) * signal.samples[i0] +
                                        frac * signal.samples[i1]);
  }
  return out;
}

AudioSignal minmax_normalize(const AudioSignal& signal) {
  if (signal.samples.empty()) throw DomainError("minmax_normalize: empty signal");
  const auto [lo_it, hi_it] =
      std::minmax_element(signal.samples.begin(), signal.samples.end());
  const double lo = *lo_it, hi = *hi_it;
  AudioSignal out;
  out.sample_rate = signal.sample_rate;
  out.samples.resize(signal.samples.size());
  if (hi == lo) return out;  // constant signal -> zeros
  const double scale = 2.0 / (hi - lo);
  for (std::size_t i = 0; i < signal.samples.size(); ++i) {
    out.samples[i] = static_cast<float>((signal.samples[i] - lo) * scale - 1.0);
  }
  return out;
}

Tensor stft_power(const AudioSignal& signal) {
  const std::size_t n = signal.samples.size();
  if (n < kWindowSize) throw DomainError("stft_power: signal shorter than one window");
  const std::size_t frames = (n - kWindowSize) / kHopSize + 1;

  std::vector<double> window(kWindowSize);
  for (std::size_t j = 0; j < kWindowSize; ++j) {
    window[j] = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(j) /
                                     static_cast<double>(kWindowSize));
  }

  Tensor out({kFreqBins, frames});
  std::vector<std::complex<double>> buf(kWindowSize);
  for (std::size_t f = 0; f < frames; ++f) {
    const std::size_t start = f * kHopSize;
    for (std::size_t j = 0; j < kWindowSize; ++j) {
      buf[j] = {signal.samples[start + j] * window[j], 0.0};
    }
    fft_inplace(buf);
    for (std::size_t k = 0; k < kFreqBins; ++k) {
      out(k, f) = static_cast<float>(std::norm(buf[k]));
    }
  }
  return out;
}

Tensor mel_filterbank() {
  const std::size_t edges = kMelBands + 2;
  const double mel_lo = hz_to_mel(kMelFmin);
  const double mel_hi = hz_to_mel(kMelFmax);
  std::vector<double> edge_hz(edges);
  for (std::size_t j = 0; j < edges; ++j) {
    const double mel = mel_lo + (mel_hi - mel_lo) * static_cast<double>(j) /
                                    static_cast<double>(edges - 1);
    edge_hz[j] = mel_to_hz(mel);
  }

  Tensor fb({kMelBands, kFreqBins});
  for (std::size_t m = 0; m < kMelBands; ++m) {
    const double f0 = edge_hz[m], f1 = edge_hz[m + 1], f2 = edge_hz[m + 2];
    const double area_norm = 2.0 / (f2 - f0);
    for (std::size_t k = 0; k < kFreqBins; ++k) {
      const double fk = static_cast<double>(k) * kTargetRate / static_cast<double>(kWindowSize);
      const double up = (fk - f0) / (f1 - f0);
      const double down = (f2 - fk) / (f2 - f1);
      const double w = std::max(0.0, std::min(up, down));
      fb(m, k) = static_cast<float>(w * area_norm);
    }
  }
  return fb;
}

std::size_t mel_band_of(double hz) {
  const std::size_t edges = kMelBands + 2;
  const double mel_lo = hz_to_mel(kMelFmin);
  const double mel_hi = hz_to_mel(kMelFmax);
  std::size_t best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < kMelBands; ++m) {
    const double mel = mel_lo + (mel_hi - mel_lo) * static_cast<double>(m + 1) /
                                    static_cast<double>(edges - 1);
    const double dist = std::abs(mel_to_hz(mel) - hz);
    if (dist < best_dist) {
      best_dist = dist;
      best = m;
    }
  }
  return best;
}

Tensor mel_project(const Tensor& power) {
  if (power.rank() != 2 || power.shape()[0] != kFreqBins) {
    throw ShapeError("mel_project: expected [513 x F] power spectrogram");
  }
  static const Tensor fb = mel_filterbank();
  return tensor::matmul(fb, power);
}

Tensor log_scale_and_fit(const Tensor& mel) {
  if (mel.rank() != 2 || mel.shape()[0] != kMelBands) {
    throw ShapeError("log_scale_and_fit: expected [60 x F] mel spectrogram");
  }
  const std::size_t f_in = mel.shape()[1];
  if (f_in == 0) throw DomainError("log_scale_and_fit: zero frames");

  const auto floor_value = static_cast<float>(std::log(kLogOffset));
  Tensor out = Tensor::full({kMelBands, kTimeFrames, 1}, floor_value);
  if (f_in >= kTimeFrames) {
    const std::size_t start = (f_in - kTimeFrames) / 2;
    for (std::size_t b = 0; b < kMelBands; ++b) {
      for (std::size_t t = 0; t < kTimeFrames; ++t) {
        out(b, t, 0) = static_cast<float>(
            std::log(static_cast<double>(mel(b, start + t)) + kLogOffset));
      }
    }
  } else {
    const std::size_t pad_left = (kTimeFrames - f_in) / 2;
    for (std::size_t b = 0; b < kMelBands; ++b) {
      for (std::size_t t = 0; t < f_in; ++t) {
        out(b, pad_left + t, 0) = static_cast<float>(
            std::log(static_cast<double>(mel(b, t)) + kLogOffset));
      }
    }
  }
  return out;
}

Tensor compute_log_mel(const AudioSignal& signal) {
  const AudioSignal at_rate = resample(signal, kTargetRate);
  const AudioSignal normed = minmax_normalize(at_rate);
  Tensor spec = log_scale_and_fit(mel_project(stft_power(normed)));
  tensor::ensure_finite(spec, "log-mel spectrogram");
  return spec;
}

}  // namespace senfuse::dsp
