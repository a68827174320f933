#include "wavefg/config.hpp"

#include <cerrno>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace wavefg {
namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string lower(std::string s) {
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

[[noreturn]] void out_of_range(std::string_view key, const std::string& bounds, const std::string& got) {
  throw ConfigError("config key '" + std::string(key) + "' must be " + bounds + " (got " + got + ")");
}

std::string num(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

KeyValueFile KeyValueFile::parse(std::string_view text, std::string_view origin) {
  KeyValueFile file;
  file.origin_ = std::string(origin);
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(file.origin_ + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key{trim(line.substr(0, eq))};
    const std::string value{trim(line.substr(eq + 1))};
    if (key.empty()) {
      throw ConfigError(file.origin_ + ":" + std::to_string(line_no) + ": empty key");
    }
    if (!file.entries_.emplace(key, Entry{value, line_no, false}).second) {
      throw ConfigError(file.origin_ + ":" + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  return file;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

bool KeyValueFile::contains(std::string_view key) const { return entries_.find(key) != entries_.end(); }

std::optional<std::string> KeyValueFile::take(std::string_view key) {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  it->second.consumed = true;
  return it->second.value;
}

void KeyValueFile::reject_unconsumed() const {
  std::string unknown;
  for (const auto& [key, entry] : entries_) {
    if (entry.consumed) continue;
    if (!unknown.empty()) unknown += ", ";
    unknown += key + " (line " + std::to_string(entry.line) + ")";
  }
  if (!unknown.empty()) throw ConfigError(origin_ + ": unknown key(s): " + unknown);
}

double KeyValueFile::take_double(std::string_view key, double fallback) {
  const auto v = take(key);
  if (!v) return fallback;
  double out = 0.0;
  const char* begin = v->data();
  const char* end = begin + v->size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end || !std::isfinite(out)) {
    throw ConfigError("config key '" + std::string(key) + "': '" + *v + "' is not a number");
  }
  return out;
}

int KeyValueFile::take_int(std::string_view key, int fallback) {
  const auto v = take(key);
  if (!v) return fallback;
  int out = 0;
  const char* begin = v->data();
  const char* end = begin + v->size();
  const auto [ptr, ec] = std::from_chars(begin, end, out);
  if (ec != std::errc{} || ptr != end) {
    throw ConfigError("config key '" + std::string(key) + "': '" + *v + "' is not an integer");
  }
  return out;
}

bool KeyValueFile::take_bool(std::string_view key, bool fallback) {
  const auto v = take(key);
  if (!v) return fallback;
  const auto s = lower(*v);
  if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
  if (s == "false" || s == "0" || s == "no" || s == "off") return false;
  throw ConfigError("config key '" + std::string(key) + "': '" + *v + "' is not a boolean");
}

std::string KeyValueFile::take_string(std::string_view key, std::string fallback) {
  auto v = take(key);
  return v ? *v : std::move(fallback);
}

void DetectorConfig::validate() const {
  if (levels < 1) out_of_range("levels", "an integer >= 1", std::to_string(levels));
  if (!(ar_coefficient > 0.0 && ar_coefficient < 1.0)) {
    out_of_range("ar_coefficient", "in (0, 1)", num(ar_coefficient));
  }
  if (!(decision_k > 0.0)) out_of_range("decision_k", "> 0", num(decision_k));
  if (!(vote_fraction > 0.0 && vote_fraction <= 1.0)) {
    out_of_range("vote_fraction", "in (0, 1]", num(vote_fraction));
  }
  // Window counts are kept in 16-bit histograms: (2r+1)^2 <= 65535.
  if (lbp_window_radius < 1 || lbp_window_radius > 127) {
    out_of_range("lbp_window_radius", "an integer in [1, 127]", std::to_string(lbp_window_radius));
  }
  if (noise_sigma && !(*noise_sigma >= 0.0)) {
    out_of_range("noise_sigma", ">= 0 or 'auto'", num(*noise_sigma));
  }
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
    out_of_range("learning_rate", "in (0, 1]", num(learning_rate));
  }
  if (max_gaussians < 1 || max_gaussians > 16) {
    out_of_range("max_gaussians", "an integer in [1, 16]", std::to_string(max_gaussians));
  }
  if (burnin_frames < 0) out_of_range("burnin_frames", "an integer >= 0", std::to_string(burnin_frames));
  if (threads < 1) out_of_range("threads", "an integer >= 1", std::to_string(threads));
}

DetectorConfig parse_config(std::string_view text, std::string_view origin) {
  auto kv = KeyValueFile::parse(text, origin);
  DetectorConfig c;
  c.levels = kv.take_int("levels", c.levels);
  c.ar_coefficient = kv.take_double("ar_coefficient", c.ar_coefficient);
  c.decision_k = kv.take_double("decision_k", c.decision_k);
  c.vote_fraction = kv.take_double("vote_fraction", c.vote_fraction);
  c.lbp_window_radius = kv.take_int("lbp_window_radius", c.lbp_window_radius);
  if (kv.contains("noise_sigma") && lower(*kv.take("noise_sigma")) == "auto") {
    c.noise_sigma.reset();
  } else if (kv.contains("noise_sigma")) {
    c.noise_sigma = kv.take_double("noise_sigma", 0.0);
  }
  c.learning_rate = kv.take_double("learning_rate", c.learning_rate);
  c.max_gaussians = kv.take_int("max_gaussians", c.max_gaussians);
  c.postprocess_median = kv.take_bool("postprocess_median", c.postprocess_median);
  c.burnin_frames = kv.take_int("burnin_frames", c.burnin_frames);
  c.threads = kv.take_int("threads", c.threads);
  kv.reject_unconsumed();
  c.validate();
  return c;
}

DetectorConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.string());
}

std::string format_config(const DetectorConfig& c) {
  std::ostringstream os;
  os.precision(17);
  os << "levels = " << c.levels << '\n'
     << "ar_coefficient = " << c.ar_coefficient << '\n'
     << "decision_k = " << c.decision_k << '\n'
     << "vote_fraction = " << c.vote_fraction << '\n'
     << "lbp_window_radius = " << c.lbp_window_radius << '\n'
     << "noise_sigma = ";
  if (c.noise_sigma) {
    os << *c.noise_sigma;
  } else {
    os << "auto";
  }
  os << '\n'
     << "learning_rate = " << c.learning_rate << '\n'
     << "max_gaussians = " << c.max_gaussians << '\n'
     << "postprocess_median = " << (c.postprocess_median ? "true" : "false") << '\n'
     << "burnin_frames = " << c.burnin_frames << '\n'
     << "threads = " << c.threads << '\n';
  return os.str();
}

}  // namespace wavefg
