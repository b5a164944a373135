#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "tstretch/gabor.hpp"

namespace tstretch {

// Painless nonstationary system: per frame n a window prototype
// windows[window_of[n]] placed at centers[n] with channels[n] frequency bins.
// Centers are strictly increasing in [0, signal_len); placement is circular.
// Channel counts must be even (odd values are rounded up at construction)
// and at least the window length.
struct NsgSystem {
  std::vector<std::vector<double>> windows;  // rotated prototypes
  std::vector<std::size_t> centers;
  std::vector<std::size_t> window_of;
  std::vector<std::size_t> channels;
  std::size_t signal_len = 0;

  NsgSystem(std::vector<std::vector<double>> windows, std::vector<std::size_t> centers,
            std::vector<std::size_t> window_of, std::vector<std::size_t> channels,
            std::size_t signal_len);

  std::size_t frames() const { return centers.size(); }
  const std::vector<double>& frame_window(std::size_t n) const { return windows[window_of[n]]; }

  // The uniform special case: same window every hop samples, constant M.
  static NsgSystem uniform(const GaborFrame& frame);
};

// Ragged coefficients: row n holds channels[n] entries.
struct NsgCoefficients {
  std::vector<std::vector<std::complex<double>>> rows;
};

// c{n}(m) = sum_l f[l] g_n[l - a_n] exp(-2 pi i m (l - a_n) / M_n), offsets
// taken as the centered representative of l - a_n modulo signal_len.
NsgCoefficients nsgt_analyze(std::span<const double> f, const NsgSystem& sys);

// Diagonal of the frame operator: sum_n M_n g_n^2[l - a_n].
std::vector<double> frame_diagonal(const NsgSystem& sys);

// Paint-then-divide synthesis: per-frame inverse DFT, window, overlap-add,
// then pointwise division by the diagonal of `synth` (the canonical dual of
// the painless system). Throws NotAFrame when the diagonal is not positive.
std::vector<std::complex<double>> nsgt_synthesize_complex(const NsgCoefficients& c,
                                                          const NsgSystem& synth);
std::vector<double> nsgt_synthesize(const NsgCoefficients& c, const NsgSystem& synth);

// sum_n M_n / L.
double redundancy(const NsgSystem& sys);

// Debug dump: frame index, bin index, real, imag per line.
void dump_coefficients_csv(const NsgCoefficients& c, std::ostream& out);

}  // namespace tstretch
