#include "tstretch/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <memory>
#include <mutex>

#include "tstretch/errors.hpp"

namespace tstretch::fft {
namespace {

// The FFTW planner is not thread-safe; executing finished plans is.
std::mutex planner_mutex;

struct Plan {
  fftw_plan plan = nullptr;
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;

  Plan(std::size_t n, int sign) {
    in = fftw_alloc_complex(n);
    out = fftw_alloc_complex(n);
    if (in == nullptr || out == nullptr) throw std::bad_alloc();
    std::lock_guard<std::mutex> lock(planner_mutex);
    plan = fftw_plan_dft_1d(int(n), in, out, sign, FFTW_ESTIMATE);
  }
  ~Plan() {
    if (plan != nullptr) {
      std::lock_guard<std::mutex> lock(planner_mutex);
      fftw_destroy_plan(plan);
    }
    fftw_free(in);
    fftw_free(out);
  }
  Plan(const Plan&) = delete;
  Plan& operator=(const Plan&) = delete;
};

Plan& cached_plan(std::size_t n, int sign) {
  thread_local std::map<std::pair<std::size_t, int>, std::unique_ptr<Plan>> cache;
  auto& slot = cache[{n, sign}];
  if (!slot) slot = std::make_unique<Plan>(n, sign);
  return *slot;
}

void run(std::span<const std::complex<double>> in, std::span<std::complex<double>> out, int sign) {
  if (in.size() != out.size()) throw ShapeMismatch("fft input and output sizes differ");
  if (in.empty()) return;
  Plan& p = cached_plan(in.size(), sign);
  std::memcpy(p.in, in.data(), in.size() * sizeof(fftw_complex));
  fftw_execute(p.plan);
  std::memcpy(out.data(), p.out, out.size() * sizeof(fftw_complex));
}

}  // namespace

void forward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  run(in, out, FFTW_FORWARD);
}

void backward(std::span<const std::complex<double>> in, std::span<std::complex<double>> out) {
  run(in, out, FFTW_BACKWARD);
}

}  // namespace tstretch::fft
