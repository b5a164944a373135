#pragma once

#include <vector>

namespace tstretch {

// Mono sample buffer. Samples are dimensionless amplitudes, nominally within
// [-1, 1]; the sample rate is metadata only and never resampled.
struct Signal {
  std::vector<double> samples;
  int sample_rate = 0;
};

// Throws InvalidArgument unless the signal is nonempty, every sample is
// finite and the sample rate is positive.
void validate(const Signal& s);

}  // namespace tstretch
