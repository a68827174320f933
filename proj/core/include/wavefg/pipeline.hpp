#pragma once

#include <filesystem>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wavefg/background.hpp"
#include "wavefg/config.hpp"
#include "wavefg/decisions.hpp"
#include "wavefg/frame.hpp"
#include "wavefg/lbp.hpp"
#include "wavefg/voting.hpp"

namespace wavefg {

GmmParams gmm_params(const DetectorConfig& config);

/// config.levels, reduced to what a width x height frame supports. Sets
/// `warning` when the value had to be reduced. Throws DimensionError when
/// the frame cannot hold even one level.
int effective_levels(const DetectorConfig& config, int width, int height, std::string* warning = nullptr);

struct FrameResult {
  long index = 0;
  bool burn_in = false;
  BinaryMask mask;
  VoteMap votes;
  GrayFrame background;
  double noise_sigma = 0.0;
  std::vector<double> band_sigma;    // per band, current frame
  std::vector<double> noise_weight;  // per band
};

/// Wavelet-domain foreground detector with texture-guided weighted voting.
///
/// Per frame: update the background provider, decompose the current and
/// background images, take LBP codes and windowed histograms of every band,
/// vote per band on coefficient and texture differences, weight the votes
/// (noise, texture, translation) and threshold at vote_fraction of the
/// attainable vote. The first burnin_frames frames only train the per-band
/// statistics and return empty masks.
class ForegroundDetector {
 public:
  using WarningSink = std::function<void(const std::string&)>;

  /// Uses a GMM background built from the config.
  ForegroundDetector(const DetectorConfig& config, int width, int height, WarningSink warn = {});
  ForegroundDetector(const DetectorConfig& config, int width, int height,
                     std::unique_ptr<BackgroundProvider> background, WarningSink warn = {});

  FrameResult process_frame(const GrayFrame& frame);

  const DetectorConfig& config() const noexcept { return config_; }
  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  int levels() const noexcept { return levels_; }
  long frames_processed() const noexcept { return frames_; }
  const std::vector<double>& translation_weights() const noexcept { return translation_; }
  const BackgroundProvider& background_provider() const noexcept { return *background_; }

 private:
  struct BandOutput {
    BandVotes votes;
    FlatnessField flatness;
    double sigma = 0.0;
  };
  struct Scratch {
    LbpHistogramField cur_field;
    LbpHistogramField bg_field;
  };
  BandOutput process_band(int band, const WaveletPyramid& cur, const WaveletPyramid& bg, VoteMode mode,
                          Scratch& scratch);

  DetectorConfig config_;
  int width_;
  int height_;
  int levels_;
  std::unique_ptr<BackgroundProvider> background_;
  std::vector<BandDecisionState> coefficient_state_;
  std::vector<BandDecisionState> texture_state_;
  std::vector<double> translation_;
  std::vector<Scratch> scratch_;  // one per worker
  long frames_ = 0;
};

/// Intensity-only reference detector: the GMM's own k-sigma foreground test,
/// with the same burn-in as ForegroundDetector.
class IntensityGmmDetector {
 public:
  IntensityGmmDetector(const DetectorConfig& config, int width, int height);
  BinaryMask process_frame(const GrayFrame& frame);

 private:
  GmmBackgroundModel model_;
  double learning_rate_;
  int burnin_frames_;
  long frames_ = 0;
};

enum class BackgroundKind { Gmm, Static };

struct SequenceOptions {
  BackgroundKind background = BackgroundKind::Gmm;
  /// Frames whose median forms the static background.
  int static_frames = 30;
  bool dump_votes = false;
  /// Write the intensity-only GMM masks instead of the wavelet detector's.
  bool intensity_baseline = false;
  std::optional<std::filesystem::path> load_model;
  std::optional<std::filesystem::path> save_model;
  ForegroundDetector::WarningSink warn;
};

struct FrameSummary {
  long index = 0;
  bool burn_in = false;
  std::size_t foreground = 0;
  std::size_t pixels = 0;
  double mean_vote = 0.0;
  double mean_max_vote = 0.0;
  double noise_sigma = 0.0;
};

struct SequenceSummary {
  std::vector<FrameSummary> frames;
  int levels = 0;
};

/// Runs the detector over `frames` (in order) and writes mask_NNNNNN.pgm
/// (0/255) per input into `out_dir`, named by each input's trailing index
/// (or its 1-based position when it has none), plus summary.txt. With
/// dump_votes, votes/votes_NNNNNN.pgm hold V / V_max scaled to 0..255.
SequenceSummary process_sequence(const DetectorConfig& config, std::span<const std::filesystem::path> frames,
                                 const std::filesystem::path& out_dir, const SequenceOptions& options = {});

std::string format_summary(const SequenceSummary& summary);

}  // namespace wavefg
