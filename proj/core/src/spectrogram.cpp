#include "tstretch/spectrogram.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <vector>

#include "tstretch/gabor.hpp"
#include "tstretch/window.hpp"

namespace tstretch {

SpectrogramConfig SpectrogramConfig::for_sample_rate(int sample_rate) {
  SpectrogramConfig cfg;
  if (sample_rate > 22050) {
    cfg.hop = 256;
    cfg.channels = 4096;
  }
  return cfg;
}

void write_spectrogram_csv(const Signal& s, const SpectrogramConfig& cfg, std::ostream& out) {
  validate(s);
  const std::size_t Lp = padded_length(s.samples.size(), cfg.hop, cfg.channels);
  std::vector<double> padded = s.samples;
  padded.resize(Lp, 0.0);

  const GaborFrame frame(hann_window(cfg.channels), cfg.hop, cfg.channels, Lp);
  const DgtCoefficients c = dgt_analyze(padded, frame);

  out << "hop=" << cfg.hop << ",channels=" << cfg.channels << ",sample_rate=" << s.sample_rate
      << '\n';
  char buf[48];
  for (std::size_t m = 0; m <= c.channels / 2; ++m) {
    for (std::size_t n = 0; n < c.frames; ++n) {
      const double mag = std::max(std::abs(c.at(m, n)), 1e-15);
      std::snprintf(buf, sizeof buf, "%.9g", 20.0 * std::log10(mag));
      if (n > 0) out << ',';
      out << buf;
    }
    out << '\n';
  }
}

}  // namespace tstretch
