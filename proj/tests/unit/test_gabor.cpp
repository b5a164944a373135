#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "support.hpp"
#include "tstretch/errors.hpp"
#include "tstretch/gabor.hpp"
#include "tstretch/window.hpp"

using namespace tstretch;
using std::complex;

namespace {
constexpr double kTau = 2.0 * std::numbers::pi;
}

TEST_CASE("hann window closed form, rotated") {
  const auto w4 = hann_window(4);  // {0, 0.5, 1, 0.5} before rotation
  REQUIRE(w4.size() == 4);
  CHECK(w4[0] == 1.0);
  CHECK(w4[1] == doctest::Approx(0.5));
  CHECK(w4[2] == 0.0);
  CHECK(w4[3] == doctest::Approx(0.5));

  const auto w8 = hann_window(8);
  CHECK(w8[0] == 1.0);  // pre-rotation peak at k = 4
  for (std::size_t k = 1; k < 8; ++k) CHECK(w8[k] == doctest::Approx(w8[8 - k]));

  CHECK_THROWS_AS(hann_window(1), InvalidLength);
}

TEST_CASE("squared 75%-overlapped hann copies sum to a constant") {
  const std::size_t len = 256, hop = 64, L = 1024;
  const auto diag = frame_operator_diagonal(hann_window(len), hop, 1, L);
  const double first = diag[0];
  for (double v : diag) CHECK(v == doctest::Approx(first).epsilon(1e-12));
}

TEST_CASE("impulse at the origin has flat unit coefficients in frame 0") {
  const std::size_t L = 512, M = 128;
  std::vector<double> f(L, 0.0);
  f[0] = 1.0;
  const GaborFrame frame(hann_window(M), 64, M, L);
  const auto c = dgt_analyze(f, frame);
  for (std::size_t m = 0; m < M; ++m) {
    CHECK(c.at(m, 0).real() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(c.at(m, 0).imag() == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("analysis matches the definitional sum") {
  tstretch::Rng rng(11);
  for (const auto& [L, a, M, lg] : {std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>
                                        {256, 32, 64, 48},
                                    {256, 64, 128, 128},
                                    {512, 32, 128, 96},
                                    {512, 128, 256, 200}}) {
    const auto f = oracle::random_signal(rng, L);
    std::vector<double> g = hann_window(lg);
    if (lg == 200) {
      // asymmetrically valued but symmetric window to vary the shape
      for (std::size_t k = 0; k < g.size(); ++k) g[k] = g[k] * g[k] + 0.1;
    }
    const GaborFrame frame(g, a, M, L);
    const auto got = dgt_analyze(f, frame);
    const auto want = oracle::naive_dgt(f, g, a, M);
    CHECK(oracle::rel_error_c(got.data, want) <= 1e-10);
  }
}

TEST_CASE("a channel-centered tone concentrates on its channel") {
  const std::size_t L = 2048, a = 128, M = 256, m0 = 37;
  const std::size_t b = L / M;
  std::vector<double> f(L);
  for (std::size_t l = 0; l < L; ++l) f[l] = std::cos(kTau * double(m0 * b) * double(l) / double(L));
  const GaborFrame frame(hann_window(M), a, M, L);
  const auto c = dgt_analyze(f, frame);
  for (std::size_t n = 0; n < c.frames; ++n) {
    std::size_t best = 0;
    for (std::size_t m = 0; m <= M / 2; ++m)
      if (std::abs(c.at(m, n)) > std::abs(c.at(best, n))) best = m;
    CHECK(best == m0);
  }
}

TEST_CASE("conjugate symmetry for real input") {
  tstretch::Rng rng(3);
  const std::size_t L = 512, M = 128;
  const auto f = oracle::random_signal(rng, L);
  const auto c = dgt_analyze(f, GaborFrame(hann_window(96), 64, M, L));
  for (std::size_t n = 0; n < c.frames; ++n)
    for (std::size_t m = 1; m < M; ++m)
      CHECK(std::abs(c.at(M - m, n) - std::conj(c.at(m, n))) <= 1e-12);
}

TEST_CASE("non-overlapping rectangular window has dual 1/(M g)") {
  const std::size_t M = 64, L = 256;
  std::vector<double> rect(M, 1.0);
  const auto dual = painless_dual(rect, M, M, L);
  for (double v : dual) CHECK(v == doctest::Approx(1.0 / double(M)).epsilon(1e-12));
}

TEST_CASE("coverage gaps are rejected with the offending index") {
  try {
    painless_dual(hann_window(64), 128, 256, 1024);
    FAIL("expected NotAFrame");
  } catch (const NotAFrame& e) {
    CHECK(std::string(e.what()).find("sample") != std::string::npos);
  }
}

TEST_CASE("analysis followed by synthesis reproduces the signal") {
  tstretch::Rng rng(5);
  for (const auto& [L, a, M, lg] : {std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>
                                        {1024, 64, 256, 256},
                                    {1024, 32, 256, 128},
                                    {2048, 128, 512, 512}}) {
    const auto f = oracle::random_signal(rng, L);
    const GaborFrame frame(hann_window(lg), a, M, L);
    const auto dual = painless_dual_window(frame);
    const auto back = dgt_synthesize(dgt_analyze(f, frame), a, dual);
    CHECK(oracle::rel_error(back, f) <= 1e-10);
  }
}

TEST_CASE("window times dual sums to a partition of unity") {
  const std::size_t lg = 256, a = 64, M = 256, L = 1024;
  const auto g = hann_window(lg);
  const auto dual = painless_dual(g, a, M, L);
  std::vector<double> sum(L, 0.0);
  for (std::size_t n = 0; n < L / a; ++n)
    for (std::size_t k = 0; k < lg; ++k) {
      const std::size_t l = wrap_index(std::ptrdiff_t(n * a) + window_offset(k, lg), L);
      sum[l] += double(M) * g[k] * dual[k];
    }
  for (double v : sum) CHECK(v == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("a single coefficient synthesizes one modulated dual atom") {
  const std::size_t a = 64, M = 128, L = 512, m0 = 5, n0 = 3;
  const GaborFrame frame(hann_window(128), a, M, L);
  const auto dual = painless_dual_window(frame);

  DgtCoefficients c;
  c.channels = M;
  c.frames = L / a;
  c.data.assign(M * c.frames, 0.0);
  c.at(m0, n0) = 1.0;
  const auto out = dgt_synthesize_complex(c, a, dual);

  const auto dual_full = window_to_full(dual, L);
  for (std::size_t l = 0; l < L; ++l) {
    const std::size_t off = wrap_index(std::ptrdiff_t(l) - std::ptrdiff_t(n0 * a), L);
    const double centered = off < L - L / 2 ? double(off) : double(off) - double(L);
    const complex<double> want =
        dual_full[off] * std::polar(1.0, kTau * double(m0) * centered / double(M));
    CHECK(std::abs(out[l] - want) <= 1e-12);
  }
}

TEST_CASE("zero coefficients synthesize silence") {
  DgtCoefficients c;
  c.channels = 64;
  c.frames = 8;
  c.data.assign(64 * 8, 0.0);
  const auto out = dgt_synthesize(c, 32, painless_dual(hann_window(64), 32, 64, 256));
  for (double v : out) CHECK(v == 0.0);
}

TEST_CASE("princarg lands in (-pi, pi]") {
  CHECK(princarg(3.0 * std::numbers::pi / 2.0) == doctest::Approx(-std::numbers::pi / 2.0));
  CHECK(princarg(-std::numbers::pi) == doctest::Approx(std::numbers::pi));
  CHECK(princarg(0.0) == 0.0);
  tstretch::Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const double x = rng.range(-50.0, 50.0);
    const double p = princarg(x);
    CHECK(p > -std::numbers::pi);
    CHECK(p <= std::numbers::pi);
    CHECK(princarg(p) == doctest::Approx(p));
    const int k = int(rng.below(7)) - 3;
    CHECK(princarg(x + kTau * k) == doctest::Approx(p).epsilon(1e-9));
  }
}

TEST_CASE("frame construction rejects bad shapes") {
  CHECK_THROWS_AS(GaborFrame(hann_window(64), 48, 64, 512), ShapeMismatch);   // hop misfit
  CHECK_THROWS_AS(GaborFrame(hann_window(64), 64, 96, 512), ShapeMismatch);   // channel misfit
  CHECK_THROWS_AS(GaborFrame(hann_window(128), 64, 64, 512), ShapeMismatch);  // not painless
  CHECK_THROWS_AS(GaborFrame({1.0, 0.7, 0.2, 0.1}, 2, 4, 64), InvalidArgument);  // asymmetric
  CHECK_THROWS_AS(dgt_analyze(std::vector<double>(100, 0.0), GaborFrame(hann_window(64), 64, 64, 512)),
                  ShapeMismatch);
}

TEST_CASE("padded length is the smallest compatible multiple") {
  CHECK(padded_length(1000, 128, 2048) == 2048);
  CHECK(padded_length(2048, 128, 2048) == 2048);
  CHECK(padded_length(2049, 128, 2048) == 4096);
  CHECK(padded_length(1, 64, 256) == 256);
  CHECK(padded_length(300, 32, 48) == 384);  // lcm(32,48) = 96
}
