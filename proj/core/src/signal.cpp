#include "tstretch/signal.hpp"

#include <cmath>
#include <string>

#include "tstretch/errors.hpp"

namespace tstretch {

void validate(const Signal& s) {
  if (s.sample_rate <= 0)
    throw InvalidArgument("sample rate must be positive, got " + std::to_string(s.sample_rate));
  if (s.samples.empty()) throw InvalidArgument("signal is empty");
  for (std::size_t i = 0; i < s.samples.size(); ++i) {
    if (!std::isfinite(s.samples[i]))
      throw InvalidArgument("non-finite sample at index " + std::to_string(i));
  }
}

}  // namespace tstretch
