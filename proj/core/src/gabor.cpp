#include "tstretch/gabor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "tstretch/errors.hpp"
#include "tstretch/fft.hpp"

namespace tstretch {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void check_window(const std::vector<double>& w) {
  if (w.size() < 2) throw InvalidLength("window must have at least 2 samples");
  double peak = 0.0;
  for (double v : w) peak = std::max(peak, std::abs(v));
  if (peak == 0.0) throw InvalidArgument("window is identically zero");
  for (std::size_t k = 1; k < w.size(); ++k) {
    if (std::abs(w[k] - w[w.size() - k]) > 1e-12 * peak)
      throw InvalidArgument("window is not symmetric around its center");
  }
}

}  // namespace

GaborFrame::GaborFrame(std::vector<double> window_, std::size_t hop_, std::size_t channels_,
                       std::size_t signal_len_)
    : window(std::move(window_)), hop(hop_), channels(channels_), signal_len(signal_len_) {
  check_window(window);
  if (hop == 0 || channels == 0 || signal_len == 0)
    throw ShapeMismatch("frame parameters must be positive");
  if (signal_len % hop != 0)
    throw ShapeMismatch("hop " + std::to_string(hop) + " does not divide signal length " +
                        std::to_string(signal_len));
  if (signal_len % channels != 0)
    throw ShapeMismatch("channel count " + std::to_string(channels) +
                        " does not divide signal length " + std::to_string(signal_len));
  if (window.size() > channels)
    throw ShapeMismatch("window length " + std::to_string(window.size()) +
                        " exceeds channel count " + std::to_string(channels));
}

DgtCoefficients dgt_analyze(std::span<const double> f, const GaborFrame& frame) {
  if (f.size() != frame.signal_len)
    throw ShapeMismatch("signal length " + std::to_string(f.size()) +
                        " does not match the frame (" + std::to_string(frame.signal_len) + ")");
  const std::size_t L = frame.signal_len;
  const std::size_t M = frame.channels;
  const std::size_t N = frame.frames();
  const std::size_t lg = frame.window.size();

  DgtCoefficients c;
  c.channels = M;
  c.frames = N;
  c.data.resize(M * N);

  std::vector<std::complex<double>> buf(M);
  for (std::size_t n = 0; n < N; ++n) {
    std::fill(buf.begin(), buf.end(), std::complex<double>(0.0, 0.0));
    const std::ptrdiff_t pos = std::ptrdiff_t(n * frame.hop);
    for (std::size_t k = 0; k < lg; ++k) {
      const std::ptrdiff_t off = window_offset(k, lg);
      buf[wrap_index(off, M)] = f[wrap_index(pos + off, L)] * frame.window[k];
    }
    fft::forward(buf, c.column(n));
  }
  return c;
}

std::vector<double> frame_operator_diagonal(std::span<const double> window, std::size_t hop,
                                            std::size_t channels, std::size_t signal_len) {
  if (hop == 0 || signal_len == 0 || signal_len % hop != 0)
    throw ShapeMismatch("hop must divide the signal length");
  if (window.size() > signal_len) throw InvalidLength("window longer than the signal");
  std::vector<double> diag(signal_len, 0.0);
  const std::size_t N = signal_len / hop;
  for (std::size_t n = 0; n < N; ++n) {
    const std::ptrdiff_t pos = std::ptrdiff_t(n * hop);
    for (std::size_t k = 0; k < window.size(); ++k) {
      const std::size_t l = wrap_index(pos + window_offset(k, window.size()), signal_len);
      diag[l] += double(channels) * window[k] * window[k];
    }
  }
  return diag;
}

std::vector<double> painless_dual(std::span<const double> window, std::size_t hop,
                                  std::size_t channels, std::size_t signal_len) {
  const auto diag = frame_operator_diagonal(window, hop, channels, signal_len);
  const auto worst = std::min_element(diag.begin(), diag.end());
  if (*worst <= 0.0)
    throw NotAFrame("frame diagonal is " + std::to_string(*worst) + " at sample " +
                    std::to_string(worst - diag.begin()));
  std::vector<double> dual(window.size());
  for (std::size_t k = 0; k < window.size(); ++k)
    dual[k] = window[k] / diag[wrap_index(window_offset(k, window.size()), signal_len)];
  return dual;
}

std::vector<double> painless_dual_window(const GaborFrame& frame) {
  return painless_dual(frame.window, frame.hop, frame.channels, frame.signal_len);
}

std::vector<std::complex<double>> dgt_synthesize_complex(const DgtCoefficients& c, std::size_t hop,
                                                         std::span<const double> dual) {
  if (hop == 0) throw ShapeMismatch("hop must be positive");
  if (c.frames == 0 || c.channels == 0) throw ShapeMismatch("empty coefficient matrix");
  if (dual.size() > c.channels)
    throw ShapeMismatch("dual window longer than the channel count");
  const std::size_t M = c.channels;
  const std::size_t out_len = c.frames * hop;

  std::vector<std::complex<double>> out(out_len, {0.0, 0.0});
  std::vector<std::complex<double>> time(M);
  for (std::size_t n = 0; n < c.frames; ++n) {
    fft::backward(c.column(n), time);
    const std::ptrdiff_t pos = std::ptrdiff_t(n * hop);
    for (std::size_t k = 0; k < dual.size(); ++k) {
      const std::ptrdiff_t off = window_offset(k, dual.size());
      out[wrap_index(pos + off, out_len)] += time[wrap_index(off, M)] * dual[k];
    }
  }
  return out;
}

std::vector<double> dgt_synthesize(const DgtCoefficients& c, std::size_t hop,
                                   std::span<const double> dual) {
  const auto full = dgt_synthesize_complex(c, hop, dual);
  std::vector<double> out(full.size());
  for (std::size_t l = 0; l < full.size(); ++l) out[l] = full[l].real();
  return out;
}

double princarg(double x) {
  return x - kTwoPi * std::ceil((x - std::numbers::pi) / kTwoPi);
}

std::size_t padded_length(std::size_t len, std::size_t hop, std::size_t channels) {
  if (hop == 0 || channels == 0) throw ShapeMismatch("hop and channel count must be positive");
  const std::size_t grid = std::lcm(hop, channels);
  const std::size_t blocks = std::max<std::size_t>(1, (len + grid - 1) / grid);
  return blocks * grid;
}

}  // namespace tstretch
