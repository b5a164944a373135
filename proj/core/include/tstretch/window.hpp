#pragma once

#include <cstddef>
#include <vector>

namespace tstretch {

// Windows are stored rotated: index 0 holds the sample at time offset 0 (the
// center), indices below length - length/2 are positive offsets, the rest
// wrap around to negative offsets. A window placed at signal position p thus
// covers samples p - length/2 .. p + length - length/2 - 1 modulo the signal
// length, and a symmetric window satisfies w[k] == w[(length - k) % length].

// Periodic (DFT-even) Hann, peak-normalized to 1, rotated as above.
// Throws InvalidLength for length < 2.
std::vector<double> hann_window(std::size_t length);

// Signed time offset of element k of a rotated window.
inline std::ptrdiff_t window_offset(std::size_t k, std::size_t length) {
  return k < length - length / 2 ? std::ptrdiff_t(k)
                                 : std::ptrdiff_t(k) - std::ptrdiff_t(length);
}

inline std::size_t wrap_index(std::ptrdiff_t x, std::size_t n) {
  std::ptrdiff_t m = x % std::ptrdiff_t(n);
  return std::size_t(m < 0 ? m + std::ptrdiff_t(n) : m);
}

// Zero-extends a rotated window to a full length (offset 0 stays at index 0).
std::vector<double> window_to_full(const std::vector<double>& rotated, std::size_t signal_len);

}  // namespace tstretch
