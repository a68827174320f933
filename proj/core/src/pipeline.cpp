#include "wavefg/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "wavefg/image_io.hpp"
#include "wavefg/lbp.hpp"
#include "wavefg/swt.hpp"
#include "wavefg/weights.hpp"

namespace wavefg {
namespace fs = std::filesystem;

GmmParams gmm_params(const DetectorConfig& config) {
  GmmParams p;
  p.learning_rate = config.learning_rate;
  p.decision_k = config.decision_k;
  p.max_gaussians = config.max_gaussians;
  return p;
}

int effective_levels(const DetectorConfig& config, int width, int height, std::string* warning) {
  const int supported = max_levels(width, height);
  if (supported < 1) {
    throw DimensionError("frame " + std::to_string(width) + "x" + std::to_string(height) +
                         " is too small for a single wavelet level");
  }
  // LBP needs 3x3 planes; max_levels >= 1 already guarantees 2x2, so check.
  if (width < 3 || height < 3) throw DimensionError("frame must be at least 3x3");
  if (config.levels <= supported) return config.levels;
  if (warning) {
    *warning = "levels reduced from " + std::to_string(config.levels) + " to " + std::to_string(supported) +
               " for a " + std::to_string(width) + "x" + std::to_string(height) + " frame";
  }
  return supported;
}

ForegroundDetector::ForegroundDetector(const DetectorConfig& config, int width, int height, WarningSink warn)
    : ForegroundDetector(config, width, height,
                         std::make_unique<GmmBackgroundProvider>(width, height, gmm_params(config)),
                         std::move(warn)) {}

ForegroundDetector::ForegroundDetector(const DetectorConfig& config, int width, int height,
                                       std::unique_ptr<BackgroundProvider> background, WarningSink warn)
    : config_(config), width_(width), height_(height), background_(std::move(background)) {
  config_.validate();
  if (!background_) throw std::invalid_argument("ForegroundDetector: null background provider");
  std::string warning;
  levels_ = effective_levels(config_, width, height, &warning);
  if (!warning.empty()) {
    if (warn) {
      warn(warning);
    } else {
      std::cerr << "warning: " << warning << '\n';
    }
  }
  const int bands = kBandsPerLevel * levels_;
  coefficient_state_.assign(static_cast<std::size_t>(bands), BandDecisionState(width, height));
  texture_state_.assign(static_cast<std::size_t>(bands), BandDecisionState(width, height));
  translation_ = translation_table(levels_, config_.ar_coefficient);
}

ForegroundDetector::BandOutput ForegroundDetector::process_band(int band, const WaveletPyramid& cur,
                                                                const WaveletPyramid& bg, VoteMode mode,
                                                                Scratch& scratch) {
  const int level = band / kBandsPerLevel + 1;
  const Band kind = kAllBands[band % kBandsPerLevel];
  const auto& cur_band = cur.band(level, kind);
  const auto& bg_band = bg.band(level, kind);
  const auto idx = static_cast<std::size_t>(band);

  BandOutput out;
  out.votes.coefficient = coefficient_state_[idx].vote(coefficient_difference(cur_band, bg_band),
                                                       config_.decision_k, config_.learning_rate, mode);

  const CodePlane cur_codes = lbp_codes(cur_band);
  const CodePlane bg_codes = lbp_codes(bg_band);
  histogram_field(cur_codes, config_.lbp_window_radius, scratch.cur_field);
  histogram_field(bg_codes, config_.lbp_window_radius, scratch.bg_field);
  out.votes.texture = texture_state_[idx].vote(texture_difference(scratch.cur_field, scratch.bg_field),
                                               config_.decision_k, config_.learning_rate, mode);
  out.flatness = flatness_fraction(bg_codes, cur_codes, config_.lbp_window_radius);
  out.sigma = band_sigma(cur_band);
  return out;
}

FrameResult ForegroundDetector::process_frame(const GrayFrame& frame) {
  if (frame.width() != width_ || frame.height() != height_) {
    throw DimensionError("process_frame: frame " + std::to_string(frames_) + " is " +
                         std::to_string(frame.width()) + "x" + std::to_string(frame.height()) +
                         ", sequence is " + std::to_string(width_) + "x" + std::to_string(height_));
  }
  FrameResult result;
  result.index = frames_;
  result.burn_in = frames_ < config_.burnin_frames;
  result.background = background_->next(frame);

  const WaveletPyramid cur = decompose(frame, levels_);
  const WaveletPyramid bg = decompose(result.background, levels_);
  const VoteMode mode = result.burn_in ? VoteMode::BurnIn : VoteMode::Normal;

  const int bands = kBandsPerLevel * levels_;
  std::vector<BandOutput> outputs(static_cast<std::size_t>(bands));
  const int workers = std::min(config_.threads, bands);
  if (static_cast<int>(scratch_.size()) < workers) scratch_.resize(static_cast<std::size_t>(workers));
  if (workers <= 1) {
    if (scratch_.empty()) scratch_.resize(1);
    for (int b = 0; b < bands; ++b) {
      outputs[static_cast<std::size_t>(b)] = process_band(b, cur, bg, mode, scratch_.front());
    }
  } else {
    // Each band owns its state and output slot, so results do not depend on
    // scheduling.
    std::atomic<int> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (int b = next++; b < bands; b = next++) {
            outputs[static_cast<std::size_t>(b)] =
                process_band(b, cur, bg, mode, scratch_[static_cast<std::size_t>(t)]);
          }
        } catch (...) {
          errors[static_cast<std::size_t>(t)] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  result.noise_sigma = config_.noise_sigma ? *config_.noise_sigma : estimate_noise_sigma(cur);

  WeightSet weights;
  weights.translation = translation_;
  std::vector<BandVotes> votes;
  votes.reserve(outputs.size());
  for (int level = 1; level <= levels_; ++level) {
    std::array<FlatnessField, kBandsPerLevel> flatness;
    for (Band kind : kAllBands) {
      flatness[static_cast<int>(kind)] = std::move(outputs[band_index(level, kind)].flatness);
    }
    LevelTextureWeights tw = texture_weights(flatness);
    for (Band kind : kAllBands) {
      auto& o = outputs[band_index(level, kind)];
      const double wn = noise_weight(o.sigma, result.noise_sigma);
      result.band_sigma.push_back(o.sigma);
      result.noise_weight.push_back(wn);
      weights.noise.push_back(wn);
      weights.coefficient.push_back(std::move(tw.coefficient[static_cast<int>(kind)]));
      weights.texture.push_back(std::move(tw.texture[static_cast<int>(kind)]));
      votes.push_back(std::move(o.votes));
    }
  }

  result.votes = accumulate(votes, weights);
  result.mask = result.burn_in ? BinaryMask(width_, height_)
                               : postprocess(threshold(result.votes, config_.vote_fraction),
                                             config_.postprocess_median);
  ++frames_;
  return result;
}

IntensityGmmDetector::IntensityGmmDetector(const DetectorConfig& config, int width, int height)
    : model_(width, height, gmm_params(config)),
      learning_rate_(config.learning_rate),
      burnin_frames_(config.burnin_frames) {}

BinaryMask IntensityGmmDetector::process_frame(const GrayFrame& frame) {
  GmmUpdate update = model_.update(frame, learning_rate_);
  const bool burn_in = frames_++ < burnin_frames_;
  if (burn_in) return BinaryMask(frame.width(), frame.height());
  return std::move(update.foreground);
}

namespace {

void save_vote_fraction(const fs::path& path, const VoteMap& map) {
  std::vector<double> ratio(map.votes.size(), 0.0);
  for (std::size_t p = 0; p < ratio.size(); ++p) {
    if (map.max_votes[p] > 0.0) ratio[p] = std::clamp(map.votes[p] / map.max_votes[p], 0.0, 1.0);
  }
  save_frame(path, GrayFrame(map.votes.width(), map.votes.height(), std::move(ratio)));
}

}  // namespace

SequenceSummary process_sequence(const DetectorConfig& config, std::span<const fs::path> frames,
                                 const fs::path& out_dir, const SequenceOptions& options) {
  if (frames.empty()) throw std::invalid_argument("process_sequence: no frames");
  fs::create_directories(out_dir);
  if (options.dump_votes) fs::create_directories(out_dir / "votes");

  auto frame_error = [&](std::size_t i, const std::exception& e) {
    return IoError("frame " + std::to_string(i) + " (" + frames[i].string() + "): " + e.what());
  };
  auto load = [&](std::size_t i) {
    try {
      return load_frame(frames[i]);
    } catch (const std::exception& e) {
      throw frame_error(i, e);
    }
  };

  const GrayFrame first = load(0);
  const int width = first.width();
  const int height = first.height();

  std::unique_ptr<BackgroundProvider> provider;
  if (options.background == BackgroundKind::Static) {
    std::vector<GrayFrame> lead;
    const std::size_t n = std::min<std::size_t>(frames.size(), static_cast<std::size_t>(std::max(1, options.static_frames)));
    lead.push_back(first);
    for (std::size_t i = 1; i < n; ++i) lead.push_back(load(i));
    provider = std::make_unique<StaticBackgroundProvider>(static_background(lead));
  } else if (options.load_model) {
    std::ifstream in(*options.load_model, std::ios::binary);
    if (!in) throw IoError(options.load_model->string() + ": cannot open model checkpoint");
    provider = std::make_unique<GmmBackgroundProvider>(GmmBackgroundModel::load(in));
  } else {
    provider = std::make_unique<GmmBackgroundProvider>(width, height, gmm_params(config));
  }

  ForegroundDetector detector(config, width, height, std::move(provider), options.warn);
  std::optional<IntensityGmmDetector> baseline;
  if (options.intensity_baseline) baseline.emplace(config, width, height);

  SequenceSummary summary;
  summary.levels = detector.levels();
  for (std::size_t i = 0; i < frames.size(); ++i) {
    const GrayFrame frame = i == 0 ? first : load(i);
    const long index = frame_index(frames[i]) >= 0 ? frame_index(frames[i]) : static_cast<long>(i + 1);
    try {
      FrameResult r = detector.process_frame(frame);
      const BinaryMask mask = baseline ? baseline->process_frame(frame) : r.mask;
      save_mask(out_dir / indexed_name("mask", index), mask);
      if (options.dump_votes) save_vote_fraction(out_dir / "votes" / indexed_name("votes", index), r.votes);

      FrameSummary s;
      s.index = index;
      s.burn_in = r.burn_in;
      s.foreground = mask.count();
      s.pixels = mask.size();
      double v = 0.0, vmax = 0.0;
      for (std::size_t p = 0; p < r.votes.votes.size(); ++p) {
        v += r.votes.votes[p];
        vmax += r.votes.max_votes[p];
      }
      s.mean_vote = v / static_cast<double>(s.pixels);
      s.mean_max_vote = vmax / static_cast<double>(s.pixels);
      s.noise_sigma = r.noise_sigma;
      summary.frames.push_back(s);
    } catch (const IoError&) {
      throw;
    } catch (const std::exception& e) {
      throw frame_error(i, e);
    }
  }

  if (options.save_model) {
    const auto* gmm = dynamic_cast<const GmmBackgroundProvider*>(&detector.background_provider());
    if (!gmm) throw std::invalid_argument("save_model requires the GMM background provider");
    std::ofstream out(*options.save_model, std::ios::binary);
    if (!out) throw IoError(options.save_model->string() + ": cannot write model checkpoint");
    gmm->model().save(out);
  }

  std::ofstream summary_file(out_dir / "summary.txt");
  if (!summary_file) throw IoError((out_dir / "summary.txt").string() + ": cannot write");
  summary_file << format_summary(summary);
  return summary;
}

std::string format_summary(const SequenceSummary& summary) {
  std::ostringstream os;
  os << "# levels " << summary.levels << '\n';
  os << "# frame burn_in foreground pixels fg_fraction mean_vote mean_max_vote noise_sigma\n";
  char line[256];
  for (const auto& f : summary.frames) {
    std::snprintf(line, sizeof line, "%06ld %d %zu %zu %.6f %.6f %.6f %.6f\n", f.index, f.burn_in ? 1 : 0,
                  f.foreground, f.pixels,
                  f.pixels ? static_cast<double>(f.foreground) / static_cast<double>(f.pixels) : 0.0,
                  f.mean_vote, f.mean_max_vote, f.noise_sigma);
    os << line;
  }
  return os.str();
}

}  // namespace wavefg
