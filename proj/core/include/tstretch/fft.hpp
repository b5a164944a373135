#pragma once

#include <complex>
#include <span>

namespace tstretch::fft {

// Complex DFT with the engineering sign convention:
//   forward  X[m] = sum_k x[k] exp(-2 pi i m k / n)
//   backward x[k] = sum_m X[m] exp(+2 pi i m k / n)   (unnormalized)
// in and out must have equal size; in-place (in.data() == out.data()) is fine.
void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);
void backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out);

}  // namespace tstretch::fft
