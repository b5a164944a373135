#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <vector>

#include "tstretch/nspv.hpp"
#include "tstretch/pv.hpp"
#include "tstretch/signal.hpp"

namespace tstretch {

// Synthetic test melody: a short random walk over piano keys, each note an
// enveloped fundamental with three harmonics at halving amplitudes.
struct Note {
  int key = 49;           // piano key number, A4 = 49
  double duration = 0.5;  // seconds
  double attack = 0.01;   // seconds
  double release = 0.05;  // seconds
};

struct MelodySpec {
  std::vector<Note> notes;
  std::array<double, 4> harmonic_amps{1.0, 0.5, 0.25, 0.125};
  int sample_rate = 16000;

  static MelodySpec random(std::uint64_t seed);
};

Signal synth_melody(const MelodySpec& spec);

// The same melody regenerated with every duration and envelope time scaled
// by rate; frequencies and amplitudes untouched.
Signal perfect_stretch(const MelodySpec& spec, double rate);

// Relative spectrogram magnitude distance, computed over a fixed
// high-redundancy analysis. Shorter input is zero-padded. 0 means equal
// magnitudes; comparing anything against silence gives 1.
double error_measure(const Signal& reference, const Signal& candidate);

struct EvalConfig {
  std::size_t count = 50;
  std::uint64_t seed = 1;
  std::vector<double> rates;  // empty: random per signal in [0.5, 3.75]
  PvConfig pv_a{256, 1024};
  PvConfig pv_b{128, 512};
  NspvConfig nspv;
};

struct EvalRow {
  std::uint64_t seed = 0;
  double rate = 1.0;
  double e_pv_a = 0.0;
  double e_pv_b = 0.0;
  double e_nspv = 0.0;
  double red_pv = 0.0;
  double red_nspv = 0.0;
};

struct EvalReport {
  std::vector<EvalRow> rows;
  EvalRow averages;  // seed/rate fields hold 0 and the mean rate
};

// Deterministic given cfg: per-signal seeds and rates derive from cfg.seed.
EvalReport run_corpus(const EvalConfig& cfg);

void write_report_json(const EvalReport& report, const EvalConfig& cfg, std::ostream& out);
void write_report_csv(const EvalReport& report, const EvalConfig& cfg, std::ostream& out);

}  // namespace tstretch
