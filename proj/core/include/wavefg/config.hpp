#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace wavefg {

/// Malformed or out-of-range configuration. The message names the key.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat `key = value` text. Blank lines and `#` comments are ignored; keys
/// may appear once. Shared by detector configs and synthetic scenarios.
class KeyValueFile {
 public:
  static KeyValueFile parse(std::string_view text, std::string_view origin = "<string>");
  static KeyValueFile load(const std::filesystem::path& path);

  bool contains(std::string_view key) const;
  /// Returns the value and marks the key consumed.
  std::optional<std::string> take(std::string_view key);
  /// Throws ConfigError listing every key that was never taken.
  void reject_unconsumed() const;

  double take_double(std::string_view key, double fallback);
  int take_int(std::string_view key, int fallback);
  bool take_bool(std::string_view key, bool fallback);
  std::string take_string(std::string_view key, std::string fallback);

  const std::string& origin() const noexcept { return origin_; }

 private:
  struct Entry {
    std::string value;
    int line = 0;
    bool consumed = false;
  };
  std::map<std::string, Entry, std::less<>> entries_;
  std::string origin_;
};

struct DetectorConfig {
  int levels = 7;
  double ar_coefficient = 0.95;
  double decision_k = 2.5;
  double vote_fraction = 0.5;
  int lbp_window_radius = 8;
  /// Empty = estimate from the level-1 HH band of each frame.
  std::optional<double> noise_sigma;
  double learning_rate = 0.005;
  int max_gaussians = 5;
  bool postprocess_median = false;
  int burnin_frames = 30;
  /// Worker threads for per-band processing within one frame.
  int threads = 1;

  /// Throws ConfigError naming the offending key and its bounds.
  void validate() const;

  friend bool operator==(const DetectorConfig&, const DetectorConfig&) = default;
};

DetectorConfig parse_config(std::string_view text, std::string_view origin = "<string>");
DetectorConfig load_config(const std::filesystem::path& path);

/// Inverse of parse_config; every key is written.
std::string format_config(const DetectorConfig& config);

}  // namespace wavefg
