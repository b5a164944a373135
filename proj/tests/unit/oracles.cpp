#include "support.hpp"

#include <cmath>
#include <numbers>

#include "tstretch/window.hpp"

namespace oracle {

using std::complex;
using tstretch::window_to_full;
using tstretch::wrap_index;

std::vector<complex<double>> naive_dgt(const std::vector<double>& f,
                                       const std::vector<double>& rotated_window, std::size_t hop,
                                       std::size_t channels) {
  const std::size_t L = f.size();
  const std::size_t N = L / hop;
  const std::size_t b = L / channels;
  const auto g = window_to_full(rotated_window, L);
  std::vector<complex<double>> c(channels * N);
  for (std::size_t n = 0; n < N; ++n) {
    for (std::size_t m = 0; m < channels; ++m) {
      complex<double> acc = 0.0;
      for (std::size_t l = 0; l < L; ++l) {
        const std::size_t off = wrap_index(std::ptrdiff_t(l) - std::ptrdiff_t(n * hop), L);
        const double phase = -2.0 * std::numbers::pi * double(m) * double(b) * double(off) /
                             double(L);
        acc += f[l] * g[off] * std::polar(1.0, phase);
      }
      c[n * channels + m] = acc;
    }
  }
  return c;
}

std::vector<std::vector<complex<double>>> naive_nsgt(const std::vector<double>& f,
                                                     const tstretch::NsgSystem& sys) {
  const std::size_t L = f.size();
  std::vector<std::vector<complex<double>>> rows(sys.frames());
  for (std::size_t n = 0; n < sys.frames(); ++n) {
    const auto g = window_to_full(sys.frame_window(n), L);
    const std::size_t M = sys.channels[n];
    rows[n].resize(M);
    for (std::size_t m = 0; m < M; ++m) {
      complex<double> acc = 0.0;
      for (std::size_t l = 0; l < L; ++l) {
        const std::size_t off =
            wrap_index(std::ptrdiff_t(l) - std::ptrdiff_t(sys.centers[n]), L);
        // centered representative of the offset, as the analysis defines it
        const double centered =
            off < L - L / 2 ? double(off) : double(off) - double(L);
        const double phase = -2.0 * std::numbers::pi * double(m) * centered / double(M);
        acc += f[l] * g[off] * std::polar(1.0, phase);
      }
      rows[n][m] = acc;
    }
  }
  return rows;
}

std::vector<complex<double>> naive_nsgt_synthesize(
    const std::vector<std::vector<complex<double>>>& rows, const tstretch::NsgSystem& sys) {
  const std::size_t L = sys.signal_len;
  const auto diag = tstretch::frame_diagonal(sys);
  std::vector<complex<double>> out(L, 0.0);
  for (std::size_t n = 0; n < sys.frames(); ++n) {
    const auto g = window_to_full(sys.frame_window(n), L);
    const std::size_t M = sys.channels[n];
    for (std::size_t m = 0; m < M; ++m) {
      for (std::size_t l = 0; l < L; ++l) {
        const std::size_t off =
            wrap_index(std::ptrdiff_t(l) - std::ptrdiff_t(sys.centers[n]), L);
        const double centered = off < L - L / 2 ? double(off) : double(off) - double(L);
        const double phase = 2.0 * std::numbers::pi * double(m) * centered / double(M);
        out[l] += rows[n][m] * g[off] * std::polar(1.0, phase) / diag[l];
      }
    }
  }
  return out;
}

std::vector<double> random_signal(tstretch::Rng& rng, std::size_t len) {
  std::vector<double> f(len);
  for (double& x : f) x = rng.range(-1.0, 1.0);
  return f;
}

double rel_error(const std::vector<double>& got, const std::vector<double>& want) {
  double num = 0.0, den = 0.0;
  const std::size_t n = std::max(got.size(), want.size());
  for (std::size_t i = 0; i < n; ++i) {
    const double a = i < got.size() ? got[i] : 0.0;
    const double b = i < want.size() ? want[i] : 0.0;
    num += (a - b) * (a - b);
    den += b * b;
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

double rel_error_c(const std::vector<complex<double>>& got,
                   const std::vector<complex<double>>& want) {
  double num = 0.0, den = 0.0;
  const std::size_t n = std::max(got.size(), want.size());
  for (std::size_t i = 0; i < n; ++i) {
    const complex<double> a = i < got.size() ? got[i] : 0.0;
    const complex<double> b = i < want.size() ? want[i] : 0.0;
    num += std::norm(a - b);
    den += std::norm(b);
  }
  return den == 0.0 ? std::sqrt(num) : std::sqrt(num / den);
}

std::filesystem::path temp_path(const std::string& name) {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() / "tstretch_unit_tests";
    std::filesystem::create_directories(d);
    return d;
  }();
  return dir / name;
}

tstretch::NsgSystem random_system(tstretch::Rng& rng, std::size_t signal_len) {
  static const std::size_t lengths[3] = {32, 64, 128};
  std::vector<std::vector<double>> windows;
  for (std::size_t len : lengths) windows.push_back(tstretch::hann_window(len));

  std::vector<std::size_t> centers, window_of, channels;
  std::size_t c = rng.below(8);
  while (true) {
    const std::size_t j = rng.below(3);
    centers.push_back(c);
    window_of.push_back(j);
    channels.push_back(lengths[j] * (1 + rng.below(3)));
    // shortest window is 32, so positive coverage needs hops under 31
    const std::size_t hop = 8 + rng.below(16);
    if (c + hop >= signal_len) break;
    c += hop;
  }
  // make sure all three prototypes appear
  for (std::size_t j = 0; j < 3 && j < window_of.size(); ++j) window_of[j] = j;
  for (std::size_t j = 0; j < window_of.size(); ++j)
    channels[j] = std::max(channels[j], lengths[window_of[j]]);
  return tstretch::NsgSystem(std::move(windows), std::move(centers), std::move(window_of),
                             std::move(channels), signal_len);
}

}  // namespace oracle
