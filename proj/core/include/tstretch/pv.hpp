#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tstretch/gabor.hpp"

namespace tstretch {

// Classical phase vocoder: fixed-window analysis at hop a, per-channel
// phase unwrapping, synthesis at hop round(rate * a).
struct PvConfig {
  std::size_t hop = 256;
  std::size_t channels = 1024;
  std::size_t window_len = 0;  // 0 means equal to channels (75% overlap)

  static PvConfig for_sample_rate(int sample_rate);
};

// Per-channel instantaneous frequency (radians per sample) of frame n,
// recovered from the wrapped phase difference against frame n-1. Bins
// 0..M/2. For n = 0 the channel center frequencies are returned.
std::vector<double> channel_frequencies(const DgtCoefficients& c, std::size_t hop, std::size_t n);

std::vector<double> pv_stretch(std::span<const double> f, double rate, const PvConfig& cfg);

}  // namespace tstretch
