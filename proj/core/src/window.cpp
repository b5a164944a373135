#include "tstretch/window.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tstretch/errors.hpp"

namespace tstretch {

std::vector<double> hann_window(std::size_t length) {
  if (length < 2) throw InvalidLength("window length must be at least 2, got " + std::to_string(length));
  std::vector<double> w(length);
  const double step = 2.0 * std::numbers::pi / double(length);
  for (std::size_t k = 0; k < length; ++k) {
    // 0.5 - 0.5 cos(2 pi j / n) evaluated at j = k + n/2, i.e. rotated so the
    // peak lands on index 0.
    w[k] = 0.5 + 0.5 * std::cos(step * double(k));
  }
  // force exact zeros/symmetry at the edge of even windows
  if (length % 2 == 0) w[length / 2] = 0.0;
  return w;
}

std::vector<double> window_to_full(const std::vector<double>& rotated, std::size_t signal_len) {
  if (rotated.size() > signal_len)
    throw InvalidLength("window longer than the target signal length");
  std::vector<double> full(signal_len, 0.0);
  for (std::size_t k = 0; k < rotated.size(); ++k)
    full[wrap_index(window_offset(k, rotated.size()), signal_len)] = rotated[k];
  return full;
}

}  // namespace tstretch
