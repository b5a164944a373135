#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "support.hpp"
#include "tstretch/errors.hpp"
#include "tstretch/eval.hpp"
#include "tstretch/gabor.hpp"
#include "tstretch/window.hpp"

using namespace tstretch;

namespace {

std::size_t dominant_bin(const Signal& s) {
  const std::size_t Lp = padded_length(s.samples.size(), 128, 2048);
  std::vector<double> padded = s.samples;
  padded.resize(Lp, 0.0);
  const GaborFrame frame(hann_window(2048), 128, 2048, Lp);
  const auto c = dgt_analyze(padded, frame);
  const std::size_t mid = c.frames / 2;
  std::size_t best = 0;
  for (std::size_t m = 1; m <= 1024; ++m)
    if (std::abs(c.at(m, mid)) > std::abs(c.at(best, mid))) best = m;
  return best;
}

}  // namespace

TEST_CASE("random melodies are deterministic and in range") {
  const auto a = MelodySpec::random(123);
  const auto b = MelodySpec::random(123);
  REQUIRE(a.notes.size() == b.notes.size());
  for (std::size_t i = 0; i < a.notes.size(); ++i) {
    CHECK(a.notes[i].key == b.notes[i].key);
    CHECK(a.notes[i].duration == b.notes[i].duration);
    CHECK(a.notes[i].attack == b.notes[i].attack);
    CHECK(a.notes[i].release == b.notes[i].release);
  }

  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto spec = MelodySpec::random(seed);
    CHECK(spec.notes.size() >= 4);
    CHECK(spec.notes.size() <= 10);
    CHECK(spec.notes.front().key >= 35);
    CHECK(spec.notes.front().key <= 65);
    for (std::size_t i = 0; i < spec.notes.size(); ++i) {
      const auto& n = spec.notes[i];
      CHECK(n.key >= 1);
      CHECK(n.key <= 88);
      CHECK((n.duration == 0.5 || n.duration == 1.0));
      CHECK(n.attack >= 0.005);
      CHECK(n.attack <= 0.030);
      CHECK(n.release >= 0.020);
      CHECK(n.release <= 0.100);
      if (i > 0) {
        const int step = std::abs(n.key - spec.notes[i - 1].key);
        CHECK(step >= 1);
        CHECK(step <= 2);
      }
    }
  }
}

TEST_CASE("melody length is the sum of the note lengths") {
  const auto spec = MelodySpec::random(5);
  const auto s = synth_melody(spec);
  CHECK(s.sample_rate == 16000);
  std::size_t want = 0;
  for (const auto& n : spec.notes) want += std::size_t(std::llround(n.duration * 16000.0));
  CHECK(s.samples.size() == want);
  for (double v : s.samples) {
    CHECK(v <= 1.0);
    CHECK(v >= -1.0);
  }
  CHECK_NOTHROW(validate(s));
}

TEST_CASE("one flat note with one harmonic is a plain sine") {
  MelodySpec spec;
  Note note;
  note.key = 49;  // 440 Hz
  note.duration = 0.5;
  note.attack = 0.00005;  // clamps to a single-sample ramp
  note.release = 0.00005;
  spec.notes = {note};
  spec.harmonic_amps = {1.0, 0.0, 0.0, 0.0};

  const auto s = synth_melody(spec);
  REQUIRE(s.samples.size() == 8000);
  for (std::size_t i = 10; i + 10 < s.samples.size(); ++i) {
    const double want = std::sin(2.0 * std::numbers::pi * 440.0 * double(i) / 16000.0);
    CHECK(std::abs(s.samples[i] - want) <= 1e-12);
  }
}

TEST_CASE("the fundamental dominates the spectrum") {
  MelodySpec spec;
  Note note;
  note.key = 49;
  note.duration = 1.0;
  spec.notes = {note};
  const std::size_t bin = dominant_bin(synth_melody(spec));
  // 440 Hz on a 2048-channel grid at 16 kHz sits at bin 56.3
  CHECK(bin >= 56);
  CHECK(bin <= 57);
}

TEST_CASE("ideal stretching rescales time but not frequency") {
  const auto spec = MelodySpec::random(8);
  const auto base = synth_melody(spec);

  const auto same = perfect_stretch(spec, 1.0);
  REQUIRE(same.samples.size() == base.samples.size());
  CHECK(same.samples == base.samples);

  const auto twice = perfect_stretch(spec, 2.0);
  CHECK(twice.samples.size() == 2 * base.samples.size());

  MelodySpec one;
  one.notes = {Note{49, 1.0, 0.01, 0.05}};
  CHECK(dominant_bin(perfect_stretch(one, 2.0)) == dominant_bin(synth_melody(one)));

  CHECK_THROWS_AS(perfect_stretch(spec, 0.0), InvalidRate);
  CHECK_THROWS_AS(perfect_stretch(spec, 4.5), InvalidRate);
  CHECK_NOTHROW(perfect_stretch(spec, 4.0));
}

TEST_CASE("the error measure is a relative magnitude distance") {
  const auto s = synth_melody(MelodySpec::random(3));
  Signal neg = s, scaled = s, silent = s, padded = s;
  for (double& v : neg.samples) v = -v;
  for (double& v : scaled.samples) v *= 0.7;
  for (double& v : silent.samples) v = 0.0;
  padded.samples.resize(padded.samples.size() + 5000, 0.0);

  CHECK(error_measure(s, s) == 0.0);
  CHECK(error_measure(s, neg) <= 1e-12);
  CHECK(error_measure(s, silent) == doctest::Approx(1.0));
  CHECK(error_measure(s, scaled) == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(error_measure(s, padded) <= 1e-12);

  Signal wrong_rate = s;
  wrong_rate.sample_rate = 44100;
  CHECK_THROWS_AS(error_measure(s, wrong_rate), ShapeMismatch);
}

TEST_CASE("corpus runs are reproducible and exact at unit rate") {
  EvalConfig cfg;
  cfg.count = 2;
  cfg.seed = 11;
  cfg.rates = {1.0, 1.5};

  const auto r1 = run_corpus(cfg);
  const auto r2 = run_corpus(cfg);
  REQUIRE(r1.rows.size() == 2);
  REQUIRE(r2.rows.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(r1.rows[i].seed == r2.rows[i].seed);
    CHECK(r1.rows[i].rate == r2.rows[i].rate);
    CHECK(r1.rows[i].e_pv_a == r2.rows[i].e_pv_a);
    CHECK(r1.rows[i].e_pv_b == r2.rows[i].e_pv_b);
    CHECK(r1.rows[i].e_nspv == r2.rows[i].e_nspv);
  }

  CHECK(r1.rows[0].rate == 1.0);
  CHECK(r1.rows[0].e_pv_a <= 1e-4);  // the fixed-window vocoder is exact there
  CHECK(r1.rows[0].red_pv == doctest::Approx(4.0));
  CHECK(r1.rows[0].red_nspv > 1.0);
  CHECK(r1.averages.e_nspv ==
        doctest::Approx(0.5 * (r1.rows[0].e_nspv + r1.rows[1].e_nspv)));
}

TEST_CASE("reports serialize with the parameterized column names") {
  EvalConfig cfg;
  cfg.count = 1;
  cfg.seed = 2;
  cfg.rates = {1.25};
  const auto report = run_corpus(cfg);

  std::ostringstream js;
  write_report_json(report, cfg, js);
  const auto root = nlohmann::json::parse(js.str());
  REQUIRE(root.contains("per_signal"));
  CHECK(root["per_signal"].size() == 1);
  CHECK(root["per_signal"][0].contains("e_pv_256_1024"));
  CHECK(root["per_signal"][0].contains("e_pv_128_512"));
  CHECK(root["averages"].contains("e_nspv"));
  CHECK(root["config"]["count"] == 1);

  std::ostringstream cs;
  write_report_csv(report, cfg, cs);
  std::istringstream in(cs.str());
  std::string header;
  std::getline(in, header);
  CHECK(header == "seed,r,e_pv_256_1024,e_pv_128_512,e_nspv,red_pv,red_nspv");
  std::size_t lines = 0;
  std::string line;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 2);  // one row, one average
}
