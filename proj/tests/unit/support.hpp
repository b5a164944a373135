#pragma once

// Reference implementations written as literal definition sums, deliberately
// slow and independent of the library's folding/FFT path. Tests compare the
// fast code against these.

#include <complex>
#include <cstddef>
#include <filesystem>
#include <vector>

#include "tstretch/nsgf.hpp"
#include "tstretch/rng.hpp"

namespace oracle {

// c[n * M + m] = sum_l f[l] g[(l - n a) mod L] exp(-2 pi i m b ((l - n a) mod L) / L)
std::vector<std::complex<double>> naive_dgt(const std::vector<double>& f,
                                            const std::vector<double>& rotated_window,
                                            std::size_t hop, std::size_t channels);

// Same inner product per frame of a nonstationary system.
std::vector<std::vector<std::complex<double>>> naive_nsgt(const std::vector<double>& f,
                                                          const tstretch::NsgSystem& sys);

// Synthesis with explicitly materialized dual atoms
// g~_{m,n}[l] = g_n[l - a_n] exp(2 pi i m (l - a_n) / M_n) / diag[l].
std::vector<std::complex<double>> naive_nsgt_synthesize(
    const std::vector<std::vector<std::complex<double>>>& rows, const tstretch::NsgSystem& sys);

std::vector<double> random_signal(tstretch::Rng& rng, std::size_t len);

double rel_error(const std::vector<double>& got, const std::vector<double>& want);
double rel_error_c(const std::vector<std::complex<double>>& got,
                   const std::vector<std::complex<double>>& want);

// A random painless system over a signal of length L that is guaranteed to
// cover every sample (hops stay below half the shorter neighbour window).
tstretch::NsgSystem random_system(tstretch::Rng& rng, std::size_t signal_len);

// Scratch file path inside a per-run temp directory.
std::filesystem::path temp_path(const std::string& name);

}  // namespace oracle
