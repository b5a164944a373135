#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "tstretch/nsgf.hpp"

namespace tstretch {

// Adaptive window layout: short windows at detected attacks, dyadically
// longer ones in between. Scale k has length min_win * 2^k.
struct ScaleFrameConfig {
  std::size_t min_win = 96;
  std::size_t num_scales = 5;
  std::size_t min_channels = 768;

  static ScaleFrameConfig for_sample_rate(int sample_rate);
};

struct SequenceFrame {
  std::size_t center = 0;
  std::size_t scale = 0;
  std::size_t length = 0;
  std::size_t channels = 0;
  bool transient = false;
};

struct WindowSequence {
  std::vector<SequenceFrame> frames;
  std::size_t signal_len = 0;
};

// Places a ladder of windows between consecutive attack points (signal
// edges count as silent boundaries): scale 0 at each attack, ascending as
// far as the gap allows a matching descent, plateau in the middle. Hops
// follow the overlap rule: one third of the length for equal windows, two
// thirds of the shorter length for windows one scale apart.
WindowSequence build_window_sequence(std::span<const std::size_t> onsets, std::size_t signal_len,
                                     const ScaleFrameConfig& cfg);

struct SequencePair {
  WindowSequence analysis;
  WindowSequence synthesis;
};

// Paired sequences for a stretch by r: the synthesis layout spans
// round(r * L) with attacks moved to round(r * onset), the analysis layout
// uses the same windows at the corresponding original time instants.
SequencePair build_synthesis_sequence(std::span<const std::size_t> onsets, std::size_t signal_len,
                                      double rate, const ScaleFrameConfig& cfg);

struct StretchPlan {
  std::vector<std::size_t> analysis_centers;
  std::vector<std::size_t> synthesis_centers;
  std::vector<std::size_t> hops;  // synthesis hop n -> n+1; last entry wraps
  std::vector<double> local_rates;
  std::vector<bool> transient;
  std::size_t output_len = 0;
};

// Fixes the per-hop synthesis distances. Hops touching a transient frame
// keep the analysis distance (local rate 1); the remaining hops are scaled
// by a common factor so the total is exactly round(r * L).
StretchPlan stretch_plan(const WindowSequence& analysis, const WindowSequence& synthesis,
                         double rate);

NsgSystem make_system(const WindowSequence& seq);
NsgSystem make_synthesis_system(const WindowSequence& synthesis, const StretchPlan& plan);

}  // namespace tstretch
