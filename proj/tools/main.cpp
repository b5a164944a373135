#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <limits>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tstretch/errors.hpp"
#include "tstretch/eval.hpp"
#include "tstretch/nspv.hpp"
#include "tstretch/onsets.hpp"
#include "tstretch/pv.hpp"
#include "tstretch/scale_frames.hpp"
#include "tstretch/signal.hpp"
#include "tstretch/spectrogram.hpp"
#include "tstretch/wav.hpp"

namespace {

constexpr double kUnsetD = std::numeric_limits<double>::quiet_NaN();

struct StretchArgs {
  std::string in, out, algo = "nspv";
  std::string dump_plan, dump_peaks;
  double rate = 1.0;
  std::size_t pv_hop = 0, pv_channels = 0;
  std::size_t min_win = 0, scales = 0, min_channels = 0;
  std::size_t sf_hop = 0, sf_channels = 0, sf_neighborhood = 0;
  double sf_bias = kUnsetD, eps_db = kUnsetD;
  bool verbose = false;
};

struct OnsetArgs {
  std::string in, out;
  std::size_t sf_hop = 0, sf_channels = 0, sf_neighborhood = 0;
  double sf_bias = kUnsetD;
};

struct SpectrogramArgs {
  std::string in, out;
  std::size_t hop = 0, channels = 0;
};

struct SynthArgs {
  std::string out;
  std::uint64_t seed = 1;
  double rate = 1.0;
};

struct EvaluateArgs {
  std::string out;
  std::size_t count = 50;
  std::uint64_t seed = 1;
  std::vector<double> rates;
  bool csv = false;
};

void apply_sf_overrides(tstretch::SfConfig& cfg, std::size_t hop, std::size_t channels,
                        std::size_t neighborhood, double bias) {
  if (hop) cfg.hop = hop;
  if (channels) cfg.channels = channels;
  if (neighborhood) cfg.neighborhood = neighborhood;
  if (!std::isnan(bias)) cfg.bias = bias;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw tstretch::IoError("cannot open " + path + " for writing");
  return f;
}

void write_onsets_csv(const tstretch::OnsetList& onsets, std::ostream& out, int sample_rate) {
  out << "onset_sample,onset_seconds,sf_value\n";
  for (std::size_t pos : onsets.onsets) {
    const std::size_t frame = pos / onsets.frame_hop;
    out << pos << ',' << double(pos) / double(sample_rate) << ',' << onsets.sf_curve[frame]
        << '\n';
  }
}

void write_plan_json(const tstretch::NspvDiagnostics& diag, std::ostream& out) {
  using json = nlohmann::ordered_json;
  json root;
  root["onsets"] = diag.onsets.onsets;
  root["output_len"] = diag.plan.output_len;
  root["analysis_redundancy"] = diag.analysis_redundancy;
  json frames = json::array();
  for (std::size_t n = 0; n < diag.analysis.frames.size(); ++n) {
    const auto& fr = diag.analysis.frames[n];
    frames.push_back({{"analysis_center", diag.plan.analysis_centers[n]},
                      {"synthesis_center", diag.plan.synthesis_centers[n]},
                      {"scale", fr.scale},
                      {"length", fr.length},
                      {"channels", fr.channels},
                      {"transient", bool(diag.plan.transient[n])},
                      {"hop", diag.plan.hops[n]},
                      {"local_rate", diag.plan.local_rates[n]}});
  }
  root["frames"] = std::move(frames);
  out << root.dump(2) << '\n';
}

void write_peaks_csv(const tstretch::NspvDiagnostics& diag, std::ostream& out) {
  out << "frame,kind,bin,omega\n";
  for (std::size_t n = 0; n < diag.peaks.size(); ++n) {
    const auto& fp = diag.peaks[n];
    for (std::size_t i = 0; i < fp.peaks.size(); ++i)
      out << n << ",peak," << fp.peaks[i] << ',' << fp.omegas[i] << '\n';
    for (std::size_t v : fp.valleys) out << n << ",valley," << v << ",\n";
  }
}

int run_stretch(const StretchArgs& a) {
  const tstretch::Signal in = tstretch::read_wav(a.in);
  tstretch::Signal out;
  out.sample_rate = in.sample_rate;

  if (a.algo == "pv") {
    tstretch::PvConfig cfg = tstretch::PvConfig::for_sample_rate(in.sample_rate);
    if (a.pv_hop) cfg.hop = a.pv_hop;
    if (a.pv_channels) cfg.channels = a.pv_channels;
    out.samples = tstretch::pv_stretch(in.samples, a.rate, cfg);
    if (a.verbose)
      std::cerr << "pv: hop " << cfg.hop << ", channels " << cfg.channels << ", output "
                << out.samples.size() << " samples\n";
  } else {
    tstretch::NspvConfig cfg = tstretch::NspvConfig::for_sample_rate(in.sample_rate);
    if (a.min_win) cfg.frames.min_win = a.min_win;
    if (a.scales) cfg.frames.num_scales = a.scales;
    if (a.min_channels) cfg.frames.min_channels = a.min_channels;
    apply_sf_overrides(cfg.sf, a.sf_hop, a.sf_channels, a.sf_neighborhood, a.sf_bias);
    if (!std::isnan(a.eps_db)) cfg.eps_db = a.eps_db;

    tstretch::NspvDiagnostics diag;
    out.samples = tstretch::nspv_stretch(in.samples, a.rate, cfg, &diag);
    if (!a.dump_plan.empty()) {
      auto f = open_out(a.dump_plan);
      write_plan_json(diag, f);
    }
    if (!a.dump_peaks.empty()) {
      auto f = open_out(a.dump_peaks);
      write_peaks_csv(diag, f);
    }
    if (a.verbose)
      std::cerr << "nspv: " << diag.onsets.onsets.size() << " onsets, "
                << diag.analysis.frames.size() << " frames, redundancy "
                << diag.analysis_redundancy << ", output " << out.samples.size() << " samples\n";
  }

  tstretch::write_wav(a.out, out);
  return 0;
}

int run_onsets(const OnsetArgs& a) {
  const tstretch::Signal in = tstretch::read_wav(a.in);
  tstretch::SfConfig cfg = tstretch::SfConfig::for_sample_rate(in.sample_rate);
  apply_sf_overrides(cfg, a.sf_hop, a.sf_channels, a.sf_neighborhood, a.sf_bias);
  const tstretch::OnsetList onsets = tstretch::detect_onsets(in.samples, cfg);
  if (a.out.empty()) {
    write_onsets_csv(onsets, std::cout, in.sample_rate);
  } else {
    auto f = open_out(a.out);
    write_onsets_csv(onsets, f, in.sample_rate);
  }
  return 0;
}

int run_spectrogram(const SpectrogramArgs& a) {
  const tstretch::Signal in = tstretch::read_wav(a.in);
  tstretch::SpectrogramConfig cfg = tstretch::SpectrogramConfig::for_sample_rate(in.sample_rate);
  if (a.hop) cfg.hop = a.hop;
  if (a.channels) cfg.channels = a.channels;
  if (a.out.empty()) {
    tstretch::write_spectrogram_csv(in, cfg, std::cout);
  } else {
    auto f = open_out(a.out);
    tstretch::write_spectrogram_csv(in, cfg, f);
  }
  return 0;
}

int run_synth(const SynthArgs& a) {
  const tstretch::MelodySpec spec = tstretch::MelodySpec::random(a.seed);
  const tstretch::Signal s = tstretch::perfect_stretch(spec, a.rate);
  tstretch::write_wav(a.out, s);
  return 0;
}

int run_evaluate(const EvaluateArgs& a) {
  tstretch::EvalConfig cfg;
  cfg.count = a.count;
  cfg.seed = a.seed;
  cfg.rates = a.rates;
  const tstretch::EvalReport report = tstretch::run_corpus(cfg);
  const auto write = [&](std::ostream& out) {
    if (a.csv)
      tstretch::write_report_csv(report, cfg, out);
    else
      tstretch::write_report_json(report, cfg, out);
  };
  if (a.out.empty()) {
    write(std::cout);
  } else {
    auto f = open_out(a.out);
    write(f);
  }
  return 0;
}

void add_sf_options(CLI::App* cmd, std::size_t& hop, std::size_t& channels,
                    std::size_t& neighborhood, double& bias) {
  cmd->add_option("--sf-hop", hop, "Onset detector hop (0: by sample rate)");
  cmd->add_option("--sf-channels", channels, "Onset detector channels (0: by sample rate)");
  cmd->add_option("--sf-neighborhood", neighborhood, "Frames each side of the flux mean window");
  cmd->add_option("--sf-bias", bias, "Flux peak must exceed bias * windowed mean");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Time stretching with fixed and signal-adaptive analysis windows"};
  app.require_subcommand(1);

  StretchArgs st;
  CLI::App* stretch = app.add_subcommand("stretch", "Time stretch a wav file");
  stretch->add_option("--in", st.in, "Input wav")->required()->check(CLI::ExistingFile);
  stretch->add_option("--out", st.out, "Output wav")->required();
  stretch->add_option("--rate", st.rate, "Stretch factor in (0, 4]")->required();
  stretch->add_option("--algo", st.algo, "Algorithm")->check(CLI::IsMember({"pv", "nspv"}));
  stretch->add_option("--pv-hop", st.pv_hop, "Analysis hop for --algo pv");
  stretch->add_option("--pv-channels", st.pv_channels, "Channels for --algo pv");
  stretch->add_option("--min-win", st.min_win, "Shortest adaptive window");
  stretch->add_option("--scales", st.scales, "Number of dyadic window scales");
  stretch->add_option("--min-channels", st.min_channels, "Channel count floor per frame");
  stretch->add_option("--epsilon-db", st.eps_db, "Transient phase reset threshold (dB)");
  add_sf_options(stretch, st.sf_hop, st.sf_channels, st.sf_neighborhood, st.sf_bias);
  stretch->add_option("--dump-plan", st.dump_plan, "Write the hop plan as JSON");
  stretch->add_option("--dump-peaks", st.dump_peaks, "Write per-frame peaks as CSV");
  stretch->add_flag("--verbose", st.verbose, "Progress details on stderr");

  OnsetArgs on;
  CLI::App* onsets = app.add_subcommand("onsets", "Detect attack positions");
  onsets->add_option("--in", on.in, "Input wav")->required()->check(CLI::ExistingFile);
  onsets->add_option("--out", on.out, "Output CSV (stdout if absent)");
  add_sf_options(onsets, on.sf_hop, on.sf_channels, on.sf_neighborhood, on.sf_bias);

  SpectrogramArgs sp;
  CLI::App* spectrogram = app.add_subcommand("spectrogram", "Export dB magnitudes as CSV");
  spectrogram->add_option("--in", sp.in, "Input wav")->required()->check(CLI::ExistingFile);
  spectrogram->add_option("--out", sp.out, "Output CSV (stdout if absent)");
  spectrogram->add_option("--hop", sp.hop, "Analysis hop (0: by sample rate)");
  spectrogram->add_option("--channels", sp.channels, "Channels (0: by sample rate)");

  SynthArgs sy;
  CLI::App* synth = app.add_subcommand("synth", "Generate a seeded test melody");
  synth->add_option("--out", sy.out, "Output wav")->required();
  synth->add_option("--seed", sy.seed, "Melody seed");
  synth->add_option("--rate", sy.rate, "Render the ideally stretched melody at this factor");

  EvaluateArgs ev;
  CLI::App* evaluate = app.add_subcommand("evaluate", "Run the synthetic corpus comparison");
  evaluate->add_option("--count", ev.count, "Number of melodies");
  evaluate->add_option("--seed", ev.seed, "Corpus seed");
  evaluate->add_option("--rate", ev.rates, "Fixed rate(s) instead of random per signal");
  evaluate->add_option("--out", ev.out, "Report path (stdout if absent)");
  evaluate->add_flag("--csv", ev.csv, "CSV report instead of JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*stretch) {
      if (!(st.rate > 0.0) || st.rate > 4.0) {
        std::cerr << "rate must be in (0, 4]\n";
        return 1;
      }
      if (st.out == st.in) {
        std::cerr << "--out must differ from --in\n";
        return 1;
      }
      return run_stretch(st);
    }
    if (*onsets) return run_onsets(on);
    if (*spectrogram) return run_spectrogram(sp);
    if (*synth) return run_synth(sy);
    if (*evaluate) {
      for (double r : ev.rates) {
        if (!(r > 0.0) || r > 4.0) {
          std::cerr << "rate must be in (0, 4]\n";
          return 1;
        }
      }
      return run_evaluate(ev);
    }
  } catch (const tstretch::Error& e) {
    std::cerr << e.name() << ": " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
