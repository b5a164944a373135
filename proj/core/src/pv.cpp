#include "tstretch/pv.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "tstretch/errors.hpp"
#include "tstretch/window.hpp"

namespace tstretch {

PvConfig PvConfig::for_sample_rate(int sample_rate) {
  PvConfig cfg;
  if (sample_rate > 22050) {
    cfg.hop = 512;
    cfg.channels = 2048;
  }
  return cfg;
}

std::vector<double> channel_frequencies(const DgtCoefficients& c, std::size_t hop, std::size_t n) {
  const std::size_t M = c.channels;
  const double tau = 2.0 * std::numbers::pi;
  std::vector<double> omega(M / 2 + 1);
  for (std::size_t m = 0; m <= M / 2; ++m) {
    const double center = tau * double(m) / double(M);
    if (n == 0) {
      omega[m] = center;
      continue;
    }
    const double dphi =
        princarg(std::arg(c.at(m, n)) - std::arg(c.at(m, n - 1)) - center * double(hop));
    omega[m] = center + dphi / double(hop);
  }
  return omega;
}

std::vector<double> pv_stretch(std::span<const double> f, double rate, const PvConfig& cfg) {
  if (!(rate > 0.0) || rate > 4.0)
    throw InvalidRate("stretch rate " + std::to_string(rate) + " outside (0, 4]");
  if (f.empty()) throw ShapeMismatch("empty input");

  const std::size_t M = cfg.channels;
  const std::size_t wl = cfg.window_len == 0 ? M : cfg.window_len;
  const std::size_t L0 = f.size();
  const std::size_t Lp = padded_length(L0, cfg.hop, M);
  std::vector<double> padded(f.begin(), f.end());
  padded.resize(Lp, 0.0);

  const GaborFrame frame(hann_window(wl), cfg.hop, M, Lp);
  const DgtCoefficients c = dgt_analyze(padded, frame);
  const std::size_t N = c.frames;
  const std::size_t hop_out = std::max<long long>(1, std::llround(rate * double(cfg.hop)));

  DgtCoefficients d;
  d.channels = M;
  d.frames = N;
  d.data.resize(M * N);

  const double tau = 2.0 * std::numbers::pi;
  std::vector<double> synth_phase(M / 2 + 1), prev_arg(M / 2 + 1), cur_arg(M / 2 + 1);
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t m = 0; m <= M / 2; ++m) cur_arg[m] = std::arg(c.at(m, n));
    for (std::size_t m = 0; m <= M / 2; ++m) {
      const double mag = std::abs(c.at(m, n));
      if (n == 0) {
        synth_phase[m] = cur_arg[m];
      } else {
        const double center = tau * double(m) / double(M);
        const double dphi = princarg(cur_arg[m] - prev_arg[m] - center * double(cfg.hop));
        const double omega = center + dphi / double(cfg.hop);
        synth_phase[m] = princarg(synth_phase[m] + omega * double(hop_out));
      }
      std::complex<double> v = std::polar(mag, synth_phase[m]);
      if (m == 0 || m == M / 2) v = {v.real() < 0.0 ? -mag : mag, 0.0};
      d.data[n * M + m] = v;
      if (m > 0 && m < M / 2) d.data[n * M + (M - m)] = std::conj(v);
    }
    std::swap(prev_arg, cur_arg);
  }

  const auto dual = painless_dual(frame.window, hop_out, M, N * hop_out);
  std::vector<double> out = dgt_synthesize(d, hop_out, dual);
  out.resize(std::size_t(std::llround(rate * double(L0))), 0.0);
  return out;
}

}  // namespace tstretch
