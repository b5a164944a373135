#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "tstretch/onsets.hpp"
#include "tstretch/scale_frames.hpp"

namespace tstretch {

// Spectral peaks of one frame and the region of influence around each.
// Regions partition the half spectrum [0, M/2]: region i spans
// (valleys[i-1], valleys[i]], with the outermost regions closed by the
// spectrum edges. A valley bin belongs to the region below it; when mapping
// a bin across frames a boundary bin resolves to the region above instead.
struct FramePeaks {
  std::vector<std::size_t> peaks;
  std::vector<std::size_t> valleys;  // one between each pair of adjacent peaks
  std::vector<double> omegas;        // interpolated frequency per peak, rad/sample
  std::size_t channels = 0;

  std::size_t half_bins() const { return channels / 2 + 1; }
  std::size_t region_of(std::size_t m) const;
  std::size_t region_for_mapping(std::size_t m) const;
};

// Strict local maxima of the half-spectrum magnitudes (bins 1..M/2-1) and
// the lowest minimum between each adjacent pair. Peak frequencies are
// refined by parabolic interpolation on dB magnitudes.
FramePeaks find_peaks_valleys(std::span<const double> magnitudes, std::size_t channels);

// Parabolic refinement through three dB magnitudes around bin m_p. The
// vertex offset is clamped to [-1/2, 1/2]; a degenerate (non-concave)
// fit falls back to the bin center. Returns 2 pi (m_p + offset) / channels.
double interpolate_frequency(double alpha, double beta, double gamma, std::size_t m_p,
                             std::size_t channels);

// Nearest previous-frame peak in frequency: m_p is rescaled by
// M_prev / M_n and resolved to the peak of the region it lands in.
std::size_t map_peak_to_previous(std::size_t m_p, std::size_t channels,
                                 std::size_t channels_prev, const FramePeaks& prev);

// Carry-over between frames: synthesis phases, analysis magnitudes and
// peaks of the frame just produced. channels == 0 means no frame yet.
struct PhaseState {
  std::vector<double> phases;
  std::vector<double> magnitudes;
  FramePeaks peaks;
  std::size_t channels = 0;
  std::size_t peak_updates = 0;  // total phase estimates made at peak bins
};

// One frame of phase propagation. Peak phases advance by omega_p times the
// previous synthesis hop from the mapped previous peak; other bins in each
// region keep their analysis phase offset from the peak. On a transient
// frame a bin louder than its mapped previous peak by eps_db is
// reinitialized to its analysis phase. Without usable peaks (first frame,
// peakless frame, peakless predecessor) the whole frame reinitializes.
// Magnitudes are never altered. Returns the full conjugate-symmetric row.
std::vector<std::complex<double>> propagate_frame(std::span<const std::complex<double>> c_row,
                                                  std::size_t hop_prev, PhaseState& state,
                                                  const FramePeaks& peaks, bool transient,
                                                  double eps_db);

struct NspvConfig {
  ScaleFrameConfig frames;
  SfConfig sf;
  double eps_db = 2.0;

  static NspvConfig for_sample_rate(int sample_rate);
};

struct NspvDiagnostics {
  OnsetList onsets;
  WindowSequence analysis;
  WindowSequence synthesis;
  StretchPlan plan;
  double analysis_redundancy = 0.0;
  std::vector<FramePeaks> peaks;
  std::size_t peak_updates = 0;
};

// Full adaptive time stretch: onset detection, paired window sequences,
// hop plan, analysis, per-frame phase propagation, synthesis. The output
// has exactly round(rate * input length) samples.
std::vector<double> nspv_stretch(std::span<const double> f, double rate, const NspvConfig& cfg,
                                 NspvDiagnostics* diag = nullptr);

}  // namespace tstretch
