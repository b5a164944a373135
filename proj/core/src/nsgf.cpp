#include "tstretch/nsgf.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "tstretch/errors.hpp"
#include "tstretch/fft.hpp"

namespace tstretch {

NsgSystem::NsgSystem(std::vector<std::vector<double>> windows_, std::vector<std::size_t> centers_,
                     std::vector<std::size_t> window_of_, std::vector<std::size_t> channels_,
                     std::size_t signal_len_)
    : windows(std::move(windows_)),
      centers(std::move(centers_)),
      window_of(std::move(window_of_)),
      channels(std::move(channels_)),
      signal_len(signal_len_) {
  if (signal_len == 0) throw ShapeMismatch("signal length must be positive");
  const std::size_t n_frames = centers.size();
  if (n_frames == 0) throw ShapeMismatch("system has no frames");
  if (window_of.size() != n_frames || channels.size() != n_frames)
    throw ShapeMismatch("centers, window assignment and channel counts must have equal length");
  if (windows.empty()) throw ShapeMismatch("system has no windows");

  std::vector<bool> used(windows.size(), false);
  for (std::size_t n = 0; n < n_frames; ++n) {
    if (centers[n] >= signal_len)
      throw ShapeMismatch("frame center " + std::to_string(centers[n]) + " outside [0, " +
                          std::to_string(signal_len) + ")");
    if (n > 0 && centers[n] <= centers[n - 1])
      throw ShapeMismatch("frame centers must be strictly increasing");
    if (window_of[n] >= windows.size()) throw ShapeMismatch("window assignment out of range");
    used[window_of[n]] = true;
    channels[n] += channels[n] % 2;  // even channel counts only
    if (windows[window_of[n]].size() > channels[n])
      throw ShapeMismatch("frame " + std::to_string(n) +
                          " violates the painless condition (window longer than channel count)");
  }
  for (std::size_t j = 0; j < windows.size(); ++j) {
    if (!used[j]) throw ShapeMismatch("window prototype " + std::to_string(j) + " is unused");
    if (windows[j].size() < 2 || windows[j].size() > signal_len)
      throw InvalidLength("window prototype " + std::to_string(j) + " has invalid length");
  }
}

NsgSystem NsgSystem::uniform(const GaborFrame& frame) {
  const std::size_t N = frame.frames();
  std::vector<std::size_t> centers(N), window_of(N, 0), channels(N, frame.channels);
  for (std::size_t n = 0; n < N; ++n) centers[n] = n * frame.hop;
  return NsgSystem({frame.window}, std::move(centers), std::move(window_of), std::move(channels),
                   frame.signal_len);
}

NsgCoefficients nsgt_analyze(std::span<const double> f, const NsgSystem& sys) {
  if (f.size() != sys.signal_len)
    throw ShapeMismatch("signal length " + std::to_string(f.size()) +
                        " does not match the system (" + std::to_string(sys.signal_len) + ")");
  const std::size_t L = sys.signal_len;
  NsgCoefficients c;
  c.rows.resize(sys.frames());

  std::vector<std::complex<double>> buf;
  for (std::size_t n = 0; n < sys.frames(); ++n) {
    const auto& w = sys.frame_window(n);
    const std::size_t M = sys.channels[n];
    buf.assign(M, {0.0, 0.0});
    const std::ptrdiff_t pos = std::ptrdiff_t(sys.centers[n]);
    for (std::size_t k = 0; k < w.size(); ++k) {
      const std::ptrdiff_t off = window_offset(k, w.size());
      buf[wrap_index(off, M)] = f[wrap_index(pos + off, L)] * w[k];
    }
    c.rows[n].resize(M);
    fft::forward(buf, c.rows[n]);
  }
  return c;
}

std::vector<double> frame_diagonal(const NsgSystem& sys) {
  std::vector<double> diag(sys.signal_len, 0.0);
  for (std::size_t n = 0; n < sys.frames(); ++n) {
    const auto& w = sys.frame_window(n);
    const std::ptrdiff_t pos = std::ptrdiff_t(sys.centers[n]);
    for (std::size_t k = 0; k < w.size(); ++k) {
      const std::size_t l = wrap_index(pos + window_offset(k, w.size()), sys.signal_len);
      diag[l] += double(sys.channels[n]) * w[k] * w[k];
    }
  }
  return diag;
}

std::vector<std::complex<double>> nsgt_synthesize_complex(const NsgCoefficients& c,
                                                          const NsgSystem& synth) {
  if (c.rows.size() != synth.frames())
    throw ShapeMismatch("coefficient row count " + std::to_string(c.rows.size()) +
                        " does not match the system (" + std::to_string(synth.frames()) + ")");
  for (std::size_t n = 0; n < c.rows.size(); ++n) {
    if (c.rows[n].size() != synth.channels[n])
      throw ShapeMismatch("row " + std::to_string(n) + " has " +
                          std::to_string(c.rows[n].size()) + " bins, system expects " +
                          std::to_string(synth.channels[n]));
  }

  const auto diag = frame_diagonal(synth);
  const auto worst = std::min_element(diag.begin(), diag.end());
  if (*worst <= 0.0)
    throw NotAFrame("synthesis diagonal is " + std::to_string(*worst) + " at sample " +
                    std::to_string(worst - diag.begin()));

  const std::size_t L = synth.signal_len;
  std::vector<std::complex<double>> out(L, {0.0, 0.0});
  std::vector<std::complex<double>> time;
  for (std::size_t n = 0; n < synth.frames(); ++n) {
    const auto& w = synth.frame_window(n);
    const std::size_t M = synth.channels[n];
    time.resize(M);
    fft::backward(c.rows[n], time);
    const std::ptrdiff_t pos = std::ptrdiff_t(synth.centers[n]);
    for (std::size_t k = 0; k < w.size(); ++k) {
      const std::ptrdiff_t off = window_offset(k, w.size());
      out[wrap_index(pos + off, L)] += time[wrap_index(off, M)] * w[k];
    }
  }
  for (std::size_t l = 0; l < L; ++l) out[l] /= diag[l];
  return out;
}

std::vector<double> nsgt_synthesize(const NsgCoefficients& c, const NsgSystem& synth) {
  const auto full = nsgt_synthesize_complex(c, synth);
  std::vector<double> out(full.size());
  for (std::size_t l = 0; l < full.size(); ++l) out[l] = full[l].real();
  return out;
}

double redundancy(const NsgSystem& sys) {
  double total = 0.0;
  for (std::size_t m : sys.channels) total += double(m);
  return total / double(sys.signal_len);
}

void dump_coefficients_csv(const NsgCoefficients& c, std::ostream& out) {
  out << "frame,bin,real,imag\n";
  for (std::size_t n = 0; n < c.rows.size(); ++n) {
    for (std::size_t m = 0; m < c.rows[n].size(); ++m) {
      out << n << ',' << m << ',' << c.rows[n][m].real() << ',' << c.rows[n][m].imag() << '\n';
    }
  }
}

}  // namespace tstretch
