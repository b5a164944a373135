#pragma once

#include <cstddef>
#include <iosfwd>

#include "tstretch/signal.hpp"

namespace tstretch {

struct SpectrogramConfig {
  std::size_t hop = 128;
  std::size_t channels = 2048;  // also the Hann window length

  static SpectrogramConfig for_sample_rate(int sample_rate);
};

// dB magnitudes as CSV: a header line `hop=...,channels=...,sample_rate=...`
// then one row per bin 0..channels/2, one column per frame. Magnitudes are
// floored at 1e-15 (silence prints as -300).
void write_spectrogram_csv(const Signal& s, const SpectrogramConfig& cfg, std::ostream& out);

}  // namespace tstretch
