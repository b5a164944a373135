#include "tstretch/scale_frames.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tstretch/errors.hpp"
#include "tstretch/window.hpp"

namespace tstretch {
namespace {

void validate_config(const ScaleFrameConfig& cfg) {
  if (cfg.min_win < 16) throw InvalidArgument("minimum window must be at least 16 samples");
  if (cfg.num_scales < 1) throw InvalidArgument("need at least one window scale");
  if (cfg.min_channels < cfg.min_win)
    throw InvalidArgument("channel lower bound must be at least the minimum window length");
}

double nominal_hop(std::size_t scale_a, std::size_t scale_b, std::size_t min_win) {
  const double la = double(min_win << scale_a);
  const double lb = double(min_win << scale_b);
  if (scale_a == scale_b) return la - la / 3.0;
  // one scale apart: overlap is two thirds of the shorter window
  return 0.5 * (la + lb) - (2.0 / 3.0) * std::min(la, lb);
}

// Scale chain spanning one gap: 0,1,...,K-1, then K repeated, then back
// down to 0. Both endpoints sit exactly on the gap boundaries.
std::vector<std::size_t> segment_scales(std::size_t gap, std::size_t min_win,
                                        std::size_t num_scales, std::size_t signal_len) {
  const double D = double(gap);
  std::size_t K = 0;
  for (std::size_t k = 1; k < num_scales; ++k) {
    const double up_down = (5.0 / 3.0) * double(min_win) * double((std::size_t(1) << k) - 1);
    if (up_down <= D && (min_win << k) <= signal_len) K = k;
  }
  const double heq = nominal_hop(K, K, min_win);
  const double up_down = (5.0 / 3.0) * double(min_win) * double((std::size_t(1) << K) - 1);

  std::size_t plateau;
  if (K == 0) {
    plateau = std::max<std::size_t>(2, 1 + std::size_t(std::ceil(D / heq - 1e-9)));
  } else {
    const double extra = (D - up_down) / heq - 1e-9;
    plateau = 1 + (extra > 0.0 ? std::size_t(std::ceil(extra)) : 0);
  }

  std::vector<std::size_t> chain;
  chain.reserve(2 * K + plateau);
  for (std::size_t k = 0; k < K; ++k) chain.push_back(k);
  for (std::size_t i = 0; i < plateau; ++i) chain.push_back(K);
  for (std::size_t k = K; k-- > 0;) chain.push_back(k);
  return chain;
}

void emit_segment(std::size_t begin, std::size_t end, bool begin_is_onset,
                  const ScaleFrameConfig& cfg, std::size_t signal_len,
                  std::vector<SequenceFrame>& out) {
  const auto chain = segment_scales(end - begin, cfg.min_win, cfg.num_scales, signal_len);

  std::vector<double> hops(chain.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    hops[i] = nominal_hop(chain[i], chain[i + 1], cfg.min_win);
    total += hops[i];
  }
  const double factor = double(end - begin) / total;

  // all frames except the one at `end`, which the next segment owns
  double pos = double(begin);
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    SequenceFrame fr;
    fr.center = i == 0 ? begin : std::size_t(std::llround(pos));
    fr.scale = chain[i];
    fr.length = cfg.min_win << chain[i];
    fr.channels = std::max(fr.length, cfg.min_channels);
    fr.channels += fr.channels % 2;
    fr.transient = i == 0 && begin_is_onset;
    out.push_back(fr);
    pos += hops[i] * factor;
  }
}

// Map every center through x -> round(x * s), then restore strict growth
// inside [0, limit) where collisions or clamping collapsed neighbours.
std::vector<std::size_t> scaled_centers(const std::vector<SequenceFrame>& frames, double s,
                                        std::size_t limit) {
  std::vector<std::size_t> centers(frames.size());
  for (std::size_t n = 0; n < frames.size(); ++n) {
    auto c = std::llround(double(frames[n].center) * s);
    centers[n] = std::min<std::size_t>(std::size_t(std::max<long long>(0, c)), limit - 1);
  }
  for (std::size_t n = 1; n < centers.size(); ++n)
    centers[n] = std::max(centers[n], centers[n - 1] + 1);
  for (std::size_t n = centers.size(); n-- > 0;) {
    const std::size_t cap = limit - (centers.size() - n);
    if (centers[n] > cap)
      centers[n] = cap;
    else
      break;
  }
  for (std::size_t n = 1; n < centers.size(); ++n) {
    if (centers[n] <= centers[n - 1])
      throw InvalidRate("cannot fit " + std::to_string(centers.size()) +
                        " frames into " + std::to_string(limit) + " samples");
  }
  return centers;
}

}  // namespace

ScaleFrameConfig ScaleFrameConfig::for_sample_rate(int sample_rate) {
  ScaleFrameConfig cfg;
  if (sample_rate > 22050) {
    cfg.min_win = 384;
    cfg.min_channels = 1536;
  }
  return cfg;
}

WindowSequence build_window_sequence(std::span<const std::size_t> onsets, std::size_t signal_len,
                                     const ScaleFrameConfig& cfg) {
  validate_config(cfg);
  if (signal_len < cfg.min_win)
    throw InvalidLength("signal of " + std::to_string(signal_len) +
                        " samples is shorter than the minimum window");

  std::vector<std::size_t> bounds;
  bounds.push_back(0);
  for (std::size_t o : onsets) {
    if (o >= signal_len) throw InvalidArgument("onset position outside the signal");
    if (o > bounds.back()) bounds.push_back(o);
  }
  bounds.push_back(signal_len);

  WindowSequence seq;
  seq.signal_len = signal_len;
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
    const bool is_onset = i > 0 || (!onsets.empty() && onsets.front() == 0);
    emit_segment(bounds[i], bounds[i + 1], is_onset, cfg, signal_len, seq.frames);
  }
  return seq;
}

SequencePair build_synthesis_sequence(std::span<const std::size_t> onsets, std::size_t signal_len,
                                      double rate, const ScaleFrameConfig& cfg) {
  if (!(rate > 0.0) || rate > 4.0)
    throw InvalidRate("stretch rate " + std::to_string(rate) + " outside (0, 4]");
  const std::size_t target = std::size_t(std::llround(rate * double(signal_len)));

  SequencePair pair;
  if (rate >= 1.0) {
    std::vector<std::size_t> moved(onsets.size());
    for (std::size_t i = 0; i < onsets.size(); ++i)
      moved[i] = std::size_t(std::llround(rate * double(onsets[i])));
    pair.synthesis = build_window_sequence(moved, target, cfg);
    pair.analysis = pair.synthesis;
    pair.analysis.signal_len = signal_len;
    const auto centers = scaled_centers(pair.synthesis.frames, 1.0 / rate, signal_len);
    for (std::size_t n = 0; n < centers.size(); ++n) pair.analysis.frames[n].center = centers[n];
  } else {
    pair.analysis = build_window_sequence(onsets, signal_len, cfg);
    pair.synthesis = pair.analysis;
    pair.synthesis.signal_len = target;
    const auto centers = scaled_centers(pair.analysis.frames, rate, target);
    for (std::size_t n = 0; n < centers.size(); ++n) pair.synthesis.frames[n].center = centers[n];
  }
  return pair;
}

StretchPlan stretch_plan(const WindowSequence& analysis, const WindowSequence& synthesis,
                         double rate) {
  const std::size_t N = analysis.frames.size();
  if (N == 0 || N != synthesis.frames.size())
    throw ShapeMismatch("analysis and synthesis sequences must pair frame for frame");

  StretchPlan plan;
  plan.output_len = synthesis.signal_len;
  plan.analysis_centers.resize(N);
  plan.synthesis_centers.resize(N);
  plan.transient.resize(N);
  for (std::size_t n = 0; n < N; ++n) {
    plan.analysis_centers[n] = analysis.frames[n].center;
    plan.transient[n] = analysis.frames[n].transient;
  }

  const std::size_t L = analysis.signal_len;
  const std::size_t target = synthesis.signal_len;
  std::vector<std::size_t> alpha(N);   // analysis distances, wrap closing the circle
  std::vector<double> sigma(N);        // nominal synthesis distances
  std::vector<bool> frozen(N);
  std::size_t frozen_alpha = 0, unfrozen = 0;
  double unfrozen_sigma = 0.0;
  for (std::size_t n = 0; n < N; ++n) {
    const std::size_t next = (n + 1) % N;
    alpha[n] = n + 1 < N ? analysis.frames[next].center - analysis.frames[n].center
                         : L - analysis.frames[n].center + analysis.frames[0].center;
    sigma[n] = n + 1 < N
                   ? double(synthesis.frames[next].center - synthesis.frames[n].center)
                   : double(target - synthesis.frames[n].center + synthesis.frames[0].center);
    frozen[n] = plan.transient[n] || plan.transient[next];
    if (frozen[n])
      frozen_alpha += alpha[n];
    else {
      unfrozen += 1;
      unfrozen_sigma += sigma[n];
    }
  }

  if (target < frozen_alpha + unfrozen) {
    const double min_rate = double(frozen_alpha + unfrozen) / double(L);
    throw InfeasibleRate("rate " + std::to_string(rate) +
                         " cannot hold transients fixed; minimum feasible rate is about " +
                         std::to_string(min_rate));
  }

  const double rho =
      unfrozen == 0 ? 1.0 : double(target - frozen_alpha) / unfrozen_sigma;
  plan.hops.resize(N);
  plan.local_rates.resize(N);
  double err = 0.0;
  std::size_t total = 0, last_unfrozen = N;
  for (std::size_t n = 0; n < N; ++n) {
    if (frozen[n]) {
      plan.hops[n] = alpha[n];
    } else {
      const double ideal = rho * sigma[n] + err;
      long long h = std::llround(ideal);
      if (h < 1) h = 1;
      err = ideal - double(h);
      plan.hops[n] = std::size_t(h);
      last_unfrozen = n;
    }
    total += plan.hops[n];
  }
  if (total != target) {
    if (last_unfrozen == N)
      throw InfeasibleRate("every hop is pinned to a transient; the only feasible rate is " +
                           std::to_string(double(frozen_alpha) / double(L)));
    const long long fixed = (long long)plan.hops[last_unfrozen] + (long long)target - (long long)total;
    if (fixed < 1)
      throw InfeasibleRate("rate " + std::to_string(rate) + " leaves no room between transients");
    plan.hops[last_unfrozen] = std::size_t(fixed);
  }

  plan.synthesis_centers[0] = synthesis.frames[0].center;
  for (std::size_t n = 1; n < N; ++n)
    plan.synthesis_centers[n] = plan.synthesis_centers[n - 1] + plan.hops[n - 1];
  for (std::size_t n = 0; n < N; ++n) plan.local_rates[n] = double(plan.hops[n]) / double(alpha[n]);
  return plan;
}

namespace {

NsgSystem system_from(const std::vector<SequenceFrame>& frames,
                      const std::vector<std::size_t>& centers, std::size_t signal_len) {
  std::vector<std::size_t> proto_of_scale;
  std::vector<std::vector<double>> windows;
  std::vector<std::size_t> window_of(frames.size()), channels(frames.size());
  for (std::size_t n = 0; n < frames.size(); ++n) {
    const std::size_t k = frames[n].scale;
    if (k >= proto_of_scale.size()) proto_of_scale.resize(k + 1, SIZE_MAX);
    if (proto_of_scale[k] == SIZE_MAX) {
      proto_of_scale[k] = windows.size();
      windows.push_back(hann_window(frames[n].length));
    }
    window_of[n] = proto_of_scale[k];
    channels[n] = frames[n].channels;
  }
  return NsgSystem(std::move(windows), centers, std::move(window_of), std::move(channels),
                   signal_len);
}

}  // namespace

NsgSystem make_system(const WindowSequence& seq) {
  std::vector<std::size_t> centers(seq.frames.size());
  for (std::size_t n = 0; n < seq.frames.size(); ++n) centers[n] = seq.frames[n].center;
  return system_from(seq.frames, centers, seq.signal_len);
}

NsgSystem make_synthesis_system(const WindowSequence& synthesis, const StretchPlan& plan) {
  if (plan.synthesis_centers.size() != synthesis.frames.size())
    throw ShapeMismatch("plan does not match the synthesis sequence");
  return system_from(synthesis.frames, plan.synthesis_centers, plan.output_len);
}

}  // namespace tstretch
