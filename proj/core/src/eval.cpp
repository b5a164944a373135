#include "tstretch/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include <json.hpp>

#include "tstretch/errors.hpp"
#include "tstretch/gabor.hpp"
#include "tstretch/rng.hpp"
#include "tstretch/window.hpp"

namespace tstretch {
namespace {

constexpr int kLowestKey = 1;
constexpr int kHighestKey = 88;

double key_frequency(int key) { return 440.0 * std::pow(2.0, double(key - 49) / 12.0); }

int reflect_key(int key) {
  while (key < kLowestKey || key > kHighestKey) {
    if (key < kLowestKey) key = 2 * kLowestKey - key;
    if (key > kHighestKey) key = 2 * kHighestKey - key;
  }
  return key;
}

}  // namespace

MelodySpec MelodySpec::random(std::uint64_t seed) {
  Rng rng(seed);
  MelodySpec spec;
  const std::size_t count = 4 + rng.below(7);
  // start mid-range so the third harmonic stays well below Nyquist
  int key = 35 + int(rng.below(31));
  for (std::size_t i = 0; i < count; ++i) {
    Note note;
    note.key = key;
    note.duration = rng.below(2) ? 1.0 : 0.5;
    note.attack = rng.range(0.005, 0.030);
    note.release = rng.range(0.020, 0.100);
    spec.notes.push_back(note);
    static const int steps[4] = {-2, -1, 1, 2};
    key = reflect_key(key + steps[rng.below(4)]);
  }
  return spec;
}

Signal synth_melody(const MelodySpec& spec) {
  if (spec.notes.empty()) throw InvalidArgument("melody needs at least one note");
  Signal s;
  s.sample_rate = spec.sample_rate;
  const double fs = double(spec.sample_rate);
  double norm = 0.0;
  for (double a : spec.harmonic_amps) norm += a;

  for (const Note& note : spec.notes) {
    const std::size_t len = std::size_t(std::llround(note.duration * fs));
    const double att = std::max(1.0, note.attack * fs);
    const double rel = std::max(1.0, note.release * fs);
    const double f0 = key_frequency(note.key);
    for (std::size_t i = 0; i < len; ++i) {
      const double env =
          std::min({1.0, double(i) / att, double(len - i) / rel});
      double acc = 0.0;
      for (std::size_t h = 0; h < spec.harmonic_amps.size(); ++h) {
        const double freq = double(h + 1) * f0;
        if (freq >= 0.45 * fs) continue;  // keep partial content identical across stretches
        acc += spec.harmonic_amps[h] *
               std::sin(2.0 * std::numbers::pi * freq * (double(i) / fs));
      }
      s.samples.push_back(env * acc / norm);
    }
  }
  return s;
}

Signal perfect_stretch(const MelodySpec& spec, double rate) {
  if (!(rate > 0.0) || rate > 4.0)
    throw InvalidRate("stretch rate " + std::to_string(rate) + " outside (0, 4]");
  MelodySpec scaled = spec;
  for (Note& note : scaled.notes) {
    note.duration *= rate;
    note.attack *= rate;
    note.release *= rate;
  }
  return synth_melody(scaled);
}

double error_measure(const Signal& reference, const Signal& candidate) {
  validate(reference);
  validate(candidate);
  if (reference.sample_rate != candidate.sample_rate)
    throw ShapeMismatch("sample rates differ");

  const std::size_t len = std::max(reference.samples.size(), candidate.samples.size());
  const std::size_t Lp = padded_length(len, 128, 2048);
  std::vector<double> a = reference.samples, b = candidate.samples;
  a.resize(Lp, 0.0);
  b.resize(Lp, 0.0);

  const GaborFrame frame(hann_window(2048), 128, 2048, Lp);
  const DgtCoefficients ca = dgt_analyze(a, frame);
  const DgtCoefficients cb = dgt_analyze(b, frame);

  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < ca.data.size(); ++i) {
    const double ma = std::abs(ca.data[i]);
    const double mb = std::abs(cb.data[i]);
    num += (ma - mb) * (ma - mb);
    den += ma * ma;
  }
  if (den == 0.0) return num == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return std::sqrt(num / den);
}

EvalReport run_corpus(const EvalConfig& cfg) {
  if (cfg.count < 1) throw InvalidArgument("corpus needs at least one signal");

  EvalReport report;
  for (std::size_t i = 0; i < cfg.count; ++i) {
    const std::uint64_t sig_seed = Rng(cfg.seed + 0x9E3779B97F4A7C15ull * (i + 1)).next();
    const MelodySpec spec = MelodySpec::random(sig_seed);
    const double rate = cfg.rates.empty()
                            ? Rng(sig_seed ^ 0xD1B54A32D192ED03ull).range(0.5, 3.75)
                            : cfg.rates[i % cfg.rates.size()];

    const Signal s = synth_melody(spec);
    const Signal perf = perfect_stretch(spec, rate);

    EvalRow row;
    row.seed = sig_seed;
    row.rate = rate;
    row.e_pv_a = error_measure(perf, {pv_stretch(s.samples, rate, cfg.pv_a), s.sample_rate});
    row.e_pv_b = error_measure(perf, {pv_stretch(s.samples, rate, cfg.pv_b), s.sample_rate});
    NspvDiagnostics diag;
    row.e_nspv = error_measure(perf, {nspv_stretch(s.samples, rate, cfg.nspv, &diag), s.sample_rate});
    row.red_pv = double(cfg.pv_a.channels) / double(cfg.pv_a.hop);
    row.red_nspv = diag.analysis_redundancy;
    report.rows.push_back(row);
  }

  EvalRow& avg = report.averages;
  for (const EvalRow& row : report.rows) {
    avg.rate += row.rate;
    avg.e_pv_a += row.e_pv_a;
    avg.e_pv_b += row.e_pv_b;
    avg.e_nspv += row.e_nspv;
    avg.red_pv += row.red_pv;
    avg.red_nspv += row.red_nspv;
  }
  const double n = double(report.rows.size());
  avg.rate /= n;
  avg.e_pv_a /= n;
  avg.e_pv_b /= n;
  avg.e_nspv /= n;
  avg.red_pv /= n;
  avg.red_nspv /= n;
  return report;
}

namespace {

std::string pv_key(const char* prefix, const PvConfig& cfg) {
  return std::string(prefix) + "_" + std::to_string(cfg.hop) + "_" + std::to_string(cfg.channels);
}

}  // namespace

void write_report_json(const EvalReport& report, const EvalConfig& cfg, std::ostream& out) {
  using json = nlohmann::ordered_json;
  const std::string key_a = pv_key("e_pv", cfg.pv_a);
  const std::string key_b = pv_key("e_pv", cfg.pv_b);

  json root;
  root["config"] = {
      {"count", cfg.count},
      {"seed", cfg.seed},
      {"rates", cfg.rates.empty() ? json("random") : json(cfg.rates)},
      {"pv", json::array({{cfg.pv_a.hop, cfg.pv_a.channels}, {cfg.pv_b.hop, cfg.pv_b.channels}})},
      {"nspv",
       {{"min_win", cfg.nspv.frames.min_win},
        {"num_scales", cfg.nspv.frames.num_scales},
        {"min_channels", cfg.nspv.frames.min_channels},
        {"sf_hop", cfg.nspv.sf.hop},
        {"sf_channels", cfg.nspv.sf.channels},
        {"eps_db", cfg.nspv.eps_db}}}};

  json rows = json::array();
  for (const EvalRow& r : report.rows) {
    rows.push_back({{"seed", r.seed},
                    {"r", r.rate},
                    {key_a, r.e_pv_a},
                    {key_b, r.e_pv_b},
                    {"e_nspv", r.e_nspv},
                    {"red_pv", r.red_pv},
                    {"red_nspv", r.red_nspv}});
  }
  root["per_signal"] = std::move(rows);
  root["averages"] = {{"r", report.averages.rate},
                      {key_a, report.averages.e_pv_a},
                      {key_b, report.averages.e_pv_b},
                      {"e_nspv", report.averages.e_nspv},
                      {"red_pv", report.averages.red_pv},
                      {"red_nspv", report.averages.red_nspv}};
  out << root.dump(2) << '\n';
}

void write_report_csv(const EvalReport& report, const EvalConfig& cfg, std::ostream& out) {
  out << "seed,r," << pv_key("e_pv", cfg.pv_a) << ',' << pv_key("e_pv", cfg.pv_b)
      << ",e_nspv,red_pv,red_nspv\n";
  char line[256];
  for (const EvalRow& r : report.rows) {
    std::snprintf(line, sizeof line, "%llu,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n",
                  (unsigned long long)r.seed, r.rate, r.e_pv_a, r.e_pv_b, r.e_nspv, r.red_pv,
                  r.red_nspv);
    out << line;
  }
  const EvalRow& a = report.averages;
  std::snprintf(line, sizeof line, "average,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n", a.rate,
                a.e_pv_a, a.e_pv_b, a.e_nspv, a.red_pv, a.red_nspv);
  out << line;
}

}  // namespace tstretch
