#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "tstretch/window.hpp"

namespace tstretch {

// Uniform frame: one window placed every `hop` samples with `channels`
// frequency bins per frame, circular over signal_len. Construction enforces
// hop | signal_len, channels | signal_len, a symmetric window, and the
// painless condition (window length <= channels).
struct GaborFrame {
  std::vector<double> window;  // rotated form, see window.hpp
  std::size_t hop = 0;
  std::size_t channels = 0;
  std::size_t signal_len = 0;

  GaborFrame(std::vector<double> window, std::size_t hop, std::size_t channels,
             std::size_t signal_len);

  std::size_t frames() const { return signal_len / hop; }
};

struct DgtCoefficients {
  std::size_t channels = 0;
  std::size_t frames = 0;
  std::vector<std::complex<double>> data;  // frame-major: data[n * channels + m]

  std::complex<double>& at(std::size_t m, std::size_t n) { return data[n * channels + m]; }
  const std::complex<double>& at(std::size_t m, std::size_t n) const {
    return data[n * channels + m];
  }
  std::span<std::complex<double>> column(std::size_t n) {
    return {data.data() + n * channels, channels};
  }
  std::span<const std::complex<double>> column(std::size_t n) const {
    return {data.data() + n * channels, channels};
  }
};

// c[m][n] = sum_l f[l] g[l - n hop] exp(-2 pi i m b (l - n hop) / L) with
// b = L / channels; phases are referenced to the window center.
DgtCoefficients dgt_analyze(std::span<const double> f, const GaborFrame& frame);

// Frame-operator diagonal sum_n channels * g^2[l - n hop], length signal_len.
// Needs only hop | signal_len.
std::vector<double> frame_operator_diagonal(std::span<const double> window, std::size_t hop,
                                            std::size_t channels, std::size_t signal_len);

// Canonical dual window g / diagonal (painless case). Throws NotAFrame when
// the diagonal is not strictly positive, reporting the offending sample.
std::vector<double> painless_dual(std::span<const double> window, std::size_t hop,
                                  std::size_t channels, std::size_t signal_len);
std::vector<double> painless_dual_window(const GaborFrame& frame);

// Overlap-add synthesis with the given hop and dual window; output length is
// c.frames * hop. The complex variant keeps any imaginary residue, the real
// variant drops it (exact for conjugate-symmetric coefficients).
std::vector<std::complex<double>> dgt_synthesize_complex(const DgtCoefficients& c, std::size_t hop,
                                                         std::span<const double> dual);
std::vector<double> dgt_synthesize(const DgtCoefficients& c, std::size_t hop,
                                   std::span<const double> dual);

// Principal argument in (-pi, pi].
double princarg(double x);

// Smallest multiple of lcm(hop, channels) holding at least len samples.
std::size_t padded_length(std::size_t len, std::size_t hop, std::size_t channels);

}  // namespace tstretch
