#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "wavefg/config.hpp"
#include "wavefg/eval.hpp"
#include "wavefg/image_io.hpp"
#include "wavefg/pipeline.hpp"
#include "wavefg/swt.hpp"
#include "wavefg/synth.hpp"
#include "wavefg/weights.hpp"

namespace fs = std::filesystem;
using namespace wavefg;

namespace {

DetectorConfig config_or_default(const std::string& path) {
  return path.empty() ? DetectorConfig{} : load_config(path);
}

std::vector<fs::path> require_frames(const fs::path& dir) {
  auto frames = list_frames(dir);
  if (frames.empty()) throw IoError(dir.string() + ": no .pgm or .png frames");
  return frames;
}

struct DetectArgs {
  std::string config, frames, out, background = "gmm", load_model, save_model;
  int static_frames = 30;
  int threads = 0;
  bool dump_votes = false, baseline = false, quiet = false;
};

int run_detect(const DetectArgs& a) {
  DetectorConfig config = config_or_default(a.config);
  if (a.threads > 0) config.threads = a.threads;
  config.validate();
  SequenceOptions opt;
  opt.background = a.background == "static" ? BackgroundKind::Static : BackgroundKind::Gmm;
  opt.static_frames = a.static_frames;
  opt.dump_votes = a.dump_votes;
  opt.intensity_baseline = a.baseline;
  if (!a.load_model.empty()) opt.load_model = a.load_model;
  if (!a.save_model.empty()) opt.save_model = a.save_model;
  opt.warn = [](const std::string& w) { std::cerr << "warning: " << w << '\n'; };
  const auto frames = require_frames(a.frames);
  const SequenceSummary s = process_sequence(config, frames, a.out, opt);
  if (!a.quiet) {
    std::size_t fg = 0;
    for (const auto& f : s.frames) fg += f.foreground;
    std::cout << "processed " << s.frames.size() << " frames at " << s.levels << " levels; " << fg
              << " foreground pixels; masks in " << a.out << '\n';
  }
  return 0;
}

int run_synth(const std::string& scenario, const std::string& out, bool print) {
  const SynthScenario s = scenario.empty() ? camouflage_grating_scenario() : load_scenario(scenario);
  if (print) {
    std::cout << format_scenario(s);
    if (out.empty()) return 0;
  }
  if (out.empty()) throw std::invalid_argument("synth: --out is required");
  write_sequence(generate(s), out);
  std::ofstream(fs::path(out) / "scenario.txt") << format_scenario(s);
  std::cout << "wrote " << s.frames << " frames of " << s.width << "x" << s.height << " to " << out << '\n';
  return 0;
}

struct EvalArgs {
  std::string masks, truth, csv, name = "wavefg";
  long first = 0;
};

int run_eval(const EvalArgs& a) {
  std::map<long, fs::path> truths;
  for (const auto& p : require_frames(a.truth)) truths[frame_index(p)] = p;
  std::vector<long> indices;
  std::vector<FrameReport> reports;
  std::size_t unmatched = 0;
  for (const auto& m : require_frames(a.masks)) {
    const long idx = frame_index(m);
    if (idx < a.first) continue;
    const auto it = truths.find(idx);
    if (idx < 0 || it == truths.end()) {
      ++unmatched;
      continue;
    }
    indices.push_back(idx);
    reports.push_back(score(load_mask(m), load_mask(it->second)));
  }
  if (reports.empty()) throw std::invalid_argument("eval: no mask has a matching truth index");
  if (unmatched) std::cerr << "warning: " << unmatched << " mask files without matching truth skipped\n";
  const SequenceReport agg = aggregate(reports);
  std::cout << format_table_header() << '\n' << format_table_row(a.name, agg) << '\n';
  std::cout << agg.frames << " frames (micro-averaged counts), FPR " << false_positive_rate(agg.counts) << ", " << agg.infinite_psnr_frames
            << " frames with infinite PSNR\n";
  if (!a.csv.empty()) {
    std::ofstream out(a.csv);
    if (!out) throw IoError(a.csv + ": cannot write");
    write_csv(out, indices, reports, agg);
  }
  return 0;
}

int run_calibrate(const std::string& config_path, const std::string& frame_path) {
  const DetectorConfig config = config_or_default(config_path);
  const GrayFrame frame = load_frame(frame_path);
  std::string warning;
  const int levels = effective_levels(config, frame.width(), frame.height(), &warning);
  if (!warning.empty()) std::cerr << "warning: " << warning << '\n';
  const WaveletPyramid p = decompose(frame, levels);
  const double sigma_n = config.noise_sigma ? *config.noise_sigma : estimate_noise_sigma(p);
  std::printf("noise sigma %.6f (%s)\n", sigma_n, config.noise_sigma ? "configured" : "estimated from HH1");
  std::printf("%-5s %-4s %10s %10s %10s\n", "level", "band", "sigma", "w_n", "w_c");
  for (int l = 1; l <= levels; ++l) {
    const double wc = translation_weight(l, config.ar_coefficient);
    for (Band b : kAllBands) {
      const double s = band_sigma(p.band(l, b));
      std::printf("%-5d %-4s %10.6f %10.6f %10.6f\n", l, band_name(b), s, noise_weight(s, sigma_n), wc);
    }
  }
  return 0;
}

int run_decompose(const std::string& frame_path, int levels, const std::string& out) {
  const GrayFrame frame = load_frame(frame_path);
  const WaveletPyramid p = decompose(frame, levels);
  if (!out.empty()) fs::create_directories(out);
  std::printf("%-5s %-4s %12s %12s %12s\n", "level", "band", "min", "max", "sigma");
  for (int l = 1; l <= levels; ++l) {
    for (Band b : kAllBands) {
      const auto& band = p.band(l, b);
      const auto [lo, hi] = std::minmax_element(band.values().begin(), band.values().end());
      std::printf("%-5d %-4s %12.6f %12.6f %12.6f\n", l, band_name(b), *lo, *hi, band_sigma(band));
      if (!out.empty()) {
        save_plane_visualization(fs::path(out) / ("L" + std::to_string(l) + "_" + band_name(b) + ".pgm"), band);
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wavelet-domain foreground detection for camouflaged scenes"};
  app.require_subcommand(1);

  DetectArgs det;
  auto* detect = app.add_subcommand("detect", "Run the detector over a directory of frames");
  detect->add_option("--config", det.config, "Detector config file (key = value)")->check(CLI::ExistingFile);
  detect->add_option("--frames", det.frames, "Directory of .pgm/.png frames")->required()->check(CLI::ExistingDirectory);
  detect->add_option("--out", det.out, "Output directory for masks")->required();
  detect->add_flag("--dump-votes", det.dump_votes, "Also write V / V_max images");
  detect->add_option("--background", det.background, "Background provider")
      ->check(CLI::IsMember({"gmm", "static"}));
  detect->add_option("--static-frames", det.static_frames, "Frames in the static median background")
      ->check(CLI::PositiveNumber);
  detect->add_flag("--baseline", det.baseline, "Write the intensity-only GMM masks instead");
  detect->add_option("--load-model", det.load_model, "Start from a saved GMM checkpoint");
  detect->add_option("--save-model", det.save_model, "Save the final GMM checkpoint");
  detect->add_option("--threads", det.threads, "Override the config's worker threads")->check(CLI::PositiveNumber);
  detect->add_flag("-q,--quiet", det.quiet, "No summary line");

  std::string scenario, synth_out;
  bool print_scenario = false;
  auto* synth = app.add_subcommand("synth", "Generate a seeded synthetic sequence with ground truth");
  synth->add_option("--scenario", scenario, "Scenario file; default is the camouflage grating scene")
      ->check(CLI::ExistingFile);
  synth->add_option("--out", synth_out, "Output directory (frames/, truth/)");
  synth->add_flag("--print", print_scenario, "Print the scenario as key = value");

  EvalArgs ev;
  auto* eval = app.add_subcommand("eval", "Score masks against ground truth");
  eval->add_option("--masks", ev.masks, "Directory of mask images")->required()->check(CLI::ExistingDirectory);
  eval->add_option("--truth", ev.truth, "Directory of truth images")->required()->check(CLI::ExistingDirectory);
  eval->add_option("--csv", ev.csv, "Per-frame CSV output");
  eval->add_option("--name", ev.name, "Method label in the table");
  eval->add_option("--first", ev.first, "Ignore frames with a smaller index (e.g. burn-in)");

  std::string cal_config, cal_frame;
  auto* calibrate = app.add_subcommand("calibrate", "Print noise and translation weights for one frame");
  calibrate->add_option("--config", cal_config, "Detector config file")->check(CLI::ExistingFile);
  calibrate->add_option("--frame", cal_frame, "Sample frame")->required()->check(CLI::ExistingFile);

  std::string dec_frame, dec_out;
  int dec_levels = 3;
  auto* dec = app.add_subcommand("decompose", "Dump SWT band statistics and images for one frame");
  dec->add_option("--frame", dec_frame, "Input frame")->required()->check(CLI::ExistingFile);
  dec->add_option("--levels", dec_levels, "Decomposition levels")->check(CLI::Range(1, 15));
  dec->add_option("--out", dec_out, "Write rescaled band images here");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*detect) return run_detect(det);
    if (*synth) return run_synth(scenario, synth_out, print_scenario);
    if (*eval) return run_eval(ev);
    if (*calibrate) return run_calibrate(cal_config, cal_frame);
    if (*dec) return run_decompose(dec_frame, dec_levels, dec_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
