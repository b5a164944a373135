#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace tstretch {

// Spectral flux onset detector. The signal is analyzed with a heavily
// oversampled uniform transform and frames whose magnitude spectrum grows
// sharply relative to a local average are flagged as attack points.
struct SfConfig {
  std::size_t hop = 128;
  std::size_t channels = 2048;  // also the analysis window length
  std::size_t neighborhood = 10;
  double bias = 1.5;

  static SfConfig for_sample_rate(int sample_rate);
};

struct OnsetList {
  std::vector<std::size_t> onsets;  // sample positions, strictly increasing
  std::vector<double> sf_curve;     // one value per analysis frame
  std::size_t frame_hop = 0;        // hop used to produce sf_curve
};

// Positive spectral differences summed over all channels, one value per
// frame. sf[0] is 0 by convention.
std::vector<double> spectral_flux(std::span<const double> f, const SfConfig& cfg);

// Frame indices that are strict local maxima of sf and exceed the windowed
// mean by cfg.bias.
std::vector<std::size_t> pick_onsets(std::span<const double> sf, const SfConfig& cfg);

OnsetList detect_onsets(std::span<const double> f, const SfConfig& cfg);

}  // namespace tstretch
