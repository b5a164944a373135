#include "tstretch/nspv.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tstretch/errors.hpp"
#include "tstretch/gabor.hpp"
#include "tstretch/nsgf.hpp"

namespace tstretch {
namespace {

constexpr double kDbFloorRatio = 1e-6;  // -120 dB below the row maximum

std::vector<double> to_db(std::span<const double> mags) {
  double peak = 0.0;
  for (double m : mags) peak = std::max(peak, m);
  const double floor = peak > 0.0 ? peak * kDbFloorRatio : 1.0;
  std::vector<double> db(mags.size());
  for (std::size_t m = 0; m < mags.size(); ++m)
    db[m] = 20.0 * std::log10(std::max(mags[m], floor));
  return db;
}

}  // namespace

std::size_t FramePeaks::region_of(std::size_t m) const {
  const auto it = std::lower_bound(valleys.begin(), valleys.end(), m);
  return std::size_t(it - valleys.begin());
}

std::size_t FramePeaks::region_for_mapping(std::size_t m) const {
  const auto it = std::upper_bound(valleys.begin(), valleys.end(), m);
  return std::size_t(it - valleys.begin());
}

double interpolate_frequency(double alpha, double beta, double gamma, std::size_t m_p,
                             std::size_t channels) {
  const double denom = alpha - 2.0 * beta + gamma;
  double p = 0.0;
  if (denom < 0.0) p = std::clamp(0.5 * (alpha - gamma) / denom, -0.5, 0.5);
  return 2.0 * std::numbers::pi * (double(m_p) + p) / double(channels);
}

FramePeaks find_peaks_valleys(std::span<const double> magnitudes, std::size_t channels) {
  if (magnitudes.size() != channels / 2 + 1)
    throw ShapeMismatch("expected " + std::to_string(channels / 2 + 1) + " magnitudes, got " +
                        std::to_string(magnitudes.size()));
  FramePeaks fp;
  fp.channels = channels;
  for (std::size_t m = 1; m + 1 < magnitudes.size(); ++m) {
    if (magnitudes[m] > magnitudes[m - 1] && magnitudes[m] > magnitudes[m + 1])
      fp.peaks.push_back(m);
  }
  for (std::size_t i = 0; i + 1 < fp.peaks.size(); ++i) {
    std::size_t valley = fp.peaks[i] + 1;
    for (std::size_t m = valley + 1; m < fp.peaks[i + 1]; ++m)
      if (magnitudes[m] < magnitudes[valley]) valley = m;
    fp.valleys.push_back(valley);
  }
  if (!fp.peaks.empty()) {
    const auto db = to_db(magnitudes);
    fp.omegas.resize(fp.peaks.size());
    for (std::size_t i = 0; i < fp.peaks.size(); ++i) {
      const std::size_t m = fp.peaks[i];
      fp.omegas[i] = interpolate_frequency(db[m - 1], db[m], db[m + 1], m, channels);
    }
  }
  return fp;
}

std::size_t map_peak_to_previous(std::size_t m_p, std::size_t channels,
                                 std::size_t channels_prev, const FramePeaks& prev) {
  if (prev.peaks.empty()) throw StateMismatch("previous frame has no peaks to map to");
  auto scaled = std::llround(double(m_p) * double(channels_prev) / double(channels));
  const std::size_t m = std::min<std::size_t>(std::size_t(std::max<long long>(0, scaled)),
                                              channels_prev / 2);
  return prev.peaks[std::min(prev.region_for_mapping(m), prev.peaks.size() - 1)];
}

std::vector<std::complex<double>> propagate_frame(std::span<const std::complex<double>> c_row,
                                                  std::size_t hop_prev, PhaseState& state,
                                                  const FramePeaks& peaks, bool transient,
                                                  double eps_db) {
  const std::size_t M = c_row.size();
  if (M < 2 || M % 2 != 0) throw ShapeMismatch("coefficient rows must have even length");
  if (peaks.channels != M) throw StateMismatch("peak data belongs to a different frame size");
  if (state.channels != 0 && state.phases.size() != state.channels / 2 + 1)
    throw StateMismatch("carried phase row does not match its channel count");

  const std::size_t half = M / 2 + 1;
  std::vector<double> mags(half), args(half);
  for (std::size_t m = 0; m < half; ++m) {
    mags[m] = std::abs(c_row[m]);
    args[m] = std::arg(c_row[m]);
  }

  std::vector<double> out_phase(half);
  const bool fresh =
      state.channels == 0 || peaks.peaks.empty() || state.peaks.peaks.empty();
  if (fresh) {
    out_phase = args;
  } else {
    const auto cur_db = to_db(mags);
    const auto prev_db = to_db(state.magnitudes);
    for (std::size_t i = 0; i < peaks.peaks.size(); ++i) {
      const std::size_t m_p = peaks.peaks[i];
      const std::size_t prev_peak = map_peak_to_previous(m_p, M, state.channels, state.peaks);
      const double theta =
          princarg(state.phases[prev_peak] + peaks.omegas[i] * double(hop_prev));
      state.peak_updates += 1;

      const std::size_t lo = i == 0 ? 0 : peaks.valleys[i - 1] + 1;
      const std::size_t hi = i + 1 < peaks.peaks.size() ? peaks.valleys[i] : M / 2;
      for (std::size_t m = lo; m <= hi; ++m) {
        double phi = princarg(theta + args[m] - args[m_p]);
        if (transient && m != 0 && m != M / 2 && cur_db[m] > prev_db[prev_peak] + eps_db)
          phi = args[m];
        out_phase[m] = phi;
      }
    }
  }

  std::vector<std::complex<double>> d(M);
  for (std::size_t m = 0; m < half; ++m) {
    std::complex<double> v = std::polar(mags[m], out_phase[m]);
    if (m == 0 || m == M / 2) {
      v = {std::cos(out_phase[m]) < 0.0 ? -mags[m] : mags[m], 0.0};
      out_phase[m] = v.real() < 0.0 ? std::numbers::pi : 0.0;
    }
    d[m] = v;
    if (m > 0 && m < M / 2) d[M - m] = std::conj(v);
  }

  state.phases = std::move(out_phase);
  state.magnitudes = std::move(mags);
  state.peaks = peaks;
  state.channels = M;
  return d;
}

NspvConfig NspvConfig::for_sample_rate(int sample_rate) {
  NspvConfig cfg;
  cfg.frames = ScaleFrameConfig::for_sample_rate(sample_rate);
  cfg.sf = SfConfig::for_sample_rate(sample_rate);
  return cfg;
}

std::vector<double> nspv_stretch(std::span<const double> f, double rate, const NspvConfig& cfg,
                                 NspvDiagnostics* diag) {
  if (!(rate > 0.0) || rate > 4.0)
    throw InvalidRate("stretch rate " + std::to_string(rate) + " outside (0, 4]");
  if (f.empty()) throw ShapeMismatch("empty input");

  const OnsetList onsets = detect_onsets(f, cfg.sf);
  SequencePair pair = build_synthesis_sequence(onsets.onsets, f.size(), rate, cfg.frames);
  const StretchPlan plan = stretch_plan(pair.analysis, pair.synthesis, rate);

  const NsgSystem analysis = make_system(pair.analysis);
  const NsgSystem synthesis = make_synthesis_system(pair.synthesis, plan);

  NsgCoefficients c = nsgt_analyze(f, analysis);
  NsgCoefficients d;
  d.rows.resize(c.rows.size());

  PhaseState state;
  std::vector<double> mags;
  for (std::size_t n = 0; n < c.rows.size(); ++n) {
    const std::size_t M = c.rows[n].size();
    mags.resize(M / 2 + 1);
    for (std::size_t m = 0; m < mags.size(); ++m) mags[m] = std::abs(c.rows[n][m]);
    FramePeaks peaks = find_peaks_valleys(mags, M);
    const std::size_t hop_prev = n == 0 ? 0 : plan.hops[n - 1];
    d.rows[n] = propagate_frame(c.rows[n], hop_prev, state, peaks, plan.transient[n], cfg.eps_db);
    if (diag) diag->peaks.push_back(std::move(peaks));
  }

  std::vector<double> out = nsgt_synthesize(d, synthesis);
  if (diag) {
    diag->onsets = onsets;
    diag->analysis = std::move(pair.analysis);
    diag->synthesis = std::move(pair.synthesis);
    diag->plan = plan;
    diag->analysis_redundancy = redundancy(analysis);
    diag->peak_updates = state.peak_updates;
  }
  return out;
}

}  // namespace tstretch
