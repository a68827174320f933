#include "wavefg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "wavefg/config.hpp"
#include "wavefg/image_io.hpp"

namespace wavefg {
namespace fs = std::filesystem;

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derived_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix64(splitmix64(seed ^ (stream * 0x632be59bd9b4e019ULL)) + index);
}

// Zero-mean texture value at pattern coordinates (u, v).
class Texture {
 public:
  Texture(const TextureSpec& spec, std::uint64_t seed) : spec_(spec) {
    if (spec_.kind == PatternKind::NoiseTexture) {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> uni(-1.0, 1.0);
      tile_.resize(static_cast<std::size_t>(spec_.tile) * spec_.tile);
      for (auto& t : tile_) t = uni(rng);
    }
  }

  double operator()(int u, int v) const {
    switch (spec_.kind) {
      case PatternKind::Constant:
        return 0.0;
      case PatternKind::Grating: {
        const double t = spec_.orientation == StripeOrientation::Vertical ? u : v;
        return spec_.amplitude * std::sin(2.0 * std::numbers::pi * t / spec_.period);
      }
      case PatternKind::NoiseTexture: {
        const int tu = ((u % spec_.tile) + spec_.tile) % spec_.tile;
        const int tv = ((v % spec_.tile) + spec_.tile) % spec_.tile;
        return spec_.amplitude * tile_[static_cast<std::size_t>(tv) * spec_.tile + tu];
      }
    }
    return 0.0;
  }

 private:
  TextureSpec spec_;
  std::vector<double> tile_;
};

bool inside_shape(ShapeKind shape, int u, int v, int w, int h) {
  if (shape == ShapeKind::Rectangle) return true;
  const double cx = (w - 1) / 2.0;
  const double cy = (h - 1) / 2.0;
  const double dx = (u - cx) / (w / 2.0);
  const double dy = (v - cy) / (h / 2.0);
  return dx * dx + dy * dy <= 1.0;
}

double quantize(double v) { return std::round(std::clamp(v, 0.0, 1.0) * 255.0) / 255.0; }

[[noreturn]] void bad(const std::string& what) { throw ConfigError("scenario: " + what); }

PatternKind parse_kind(const std::string& s) {
  if (s == "constant") return PatternKind::Constant;
  if (s == "grating") return PatternKind::Grating;
  if (s == "noise") return PatternKind::NoiseTexture;
  bad("unknown pattern '" + s + "' (constant|grating|noise)");
}

StripeOrientation parse_orientation(const std::string& s) {
  if (s == "vertical") return StripeOrientation::Vertical;
  if (s == "horizontal") return StripeOrientation::Horizontal;
  bad("unknown orientation '" + s + "' (vertical|horizontal)");
}

const char* kind_name(PatternKind k) {
  switch (k) {
    case PatternKind::Constant: return "constant";
    case PatternKind::Grating: return "grating";
    case PatternKind::NoiseTexture: return "noise";
  }
  return "?";
}

TextureSpec take_texture(KeyValueFile& kv, const std::string& prefix, TextureSpec t) {
  t.kind = parse_kind(kv.take_string(prefix + "_pattern", kind_name(t.kind)));
  t.amplitude = kv.take_double(prefix + "_amplitude", t.amplitude);
  t.period = kv.take_double(prefix + "_period", t.period);
  t.orientation = parse_orientation(kv.take_string(
      prefix + "_orientation", t.orientation == StripeOrientation::Vertical ? "vertical" : "horizontal"));
  t.tile = kv.take_int(prefix + "_tile", t.tile);
  return t;
}

void write_texture(std::ostream& os, const std::string& prefix, const TextureSpec& t) {
  os << prefix << "_pattern = " << kind_name(t.kind) << '\n'
     << prefix << "_amplitude = " << t.amplitude << '\n'
     << prefix << "_period = " << t.period << '\n'
     << prefix << "_orientation = " << (t.orientation == StripeOrientation::Vertical ? "vertical" : "horizontal")
     << '\n'
     << prefix << "_tile = " << t.tile << '\n';
}

void validate_texture(const TextureSpec& t, const std::string& prefix) {
  if (!(t.amplitude >= 0.0 && t.amplitude <= 0.5)) bad(prefix + "_amplitude must be in [0, 0.5]");
  if (!(t.period >= 2.0)) bad(prefix + "_period must be >= 2");
  if (t.tile < 1) bad(prefix + "_tile must be >= 1");
}

}  // namespace

void SynthScenario::validate() const {
  if (width < 4 || height < 4) bad("frame must be at least 4x4");
  if (frames < 1) bad("frames must be >= 1");
  if (!(background_level >= 0.0 && background_level <= 1.0)) bad("background_level must be in [0, 1]");
  if (!(noise_sigma >= 0.0)) bad("noise_sigma must be >= 0");
  validate_texture(background, "background");
  validate_texture(object, "object");
  if (!has_object) return;
  if (object_width < 1 || object_height < 1) bad("object size must be positive");
  if (enter_frame < 0) bad("enter_frame must be >= 0");
  for (int t = 0; t < frames; ++t) {
    if (!object_visible(t)) continue;
    const auto [x, y] = object_origin(t);
    if (x < 0 || y < 0 || x + object_width > width || y + object_height > height) {
      bad("object leaves the frame at frame " + std::to_string(t) + " (origin " + std::to_string(x) + "," +
          std::to_string(y) + ")");
    }
  }
}

bool SynthScenario::object_visible(int frame) const noexcept {
  return has_object && frame >= enter_frame && (exit_frame < 0 || frame < exit_frame);
}

std::pair<int, int> SynthScenario::object_origin(int frame) const noexcept {
  const double t = frame - enter_frame;
  return {static_cast<int>(std::floor(start_x + velocity_x * t)),
          static_cast<int>(std::floor(start_y + velocity_y * t))};
}

SynthScenario camouflage_grating_scenario() { return SynthScenario{}; }

SynthScenario parse_scenario(std::string_view text, std::string_view origin) {
  auto kv = KeyValueFile::parse(text, origin);
  SynthScenario s;
  s.width = kv.take_int("width", s.width);
  s.height = kv.take_int("height", s.height);
  s.frames = kv.take_int("frames", s.frames);
  s.background_level = kv.take_double("background_level", s.background_level);
  s.background = take_texture(kv, "background", s.background);
  s.has_object = kv.take_bool("object", s.has_object);
  const std::string shape = kv.take_string("object_shape", s.shape == ShapeKind::Rectangle ? "rectangle" : "ellipse");
  if (shape == "rectangle") {
    s.shape = ShapeKind::Rectangle;
  } else if (shape == "ellipse") {
    s.shape = ShapeKind::Ellipse;
  } else {
    bad("unknown object_shape '" + shape + "' (rectangle|ellipse)");
  }
  s.object_width = kv.take_int("object_width", s.object_width);
  s.object_height = kv.take_int("object_height", s.object_height);
  s.start_x = kv.take_double("object_x", s.start_x);
  s.start_y = kv.take_double("object_y", s.start_y);
  s.velocity_x = kv.take_double("object_velocity_x", s.velocity_x);
  s.velocity_y = kv.take_double("object_velocity_y", s.velocity_y);
  s.enter_frame = kv.take_int("enter_frame", s.enter_frame);
  s.exit_frame = kv.take_int("exit_frame", s.exit_frame);
  s.object = take_texture(kv, "object", s.object);
  s.noise_sigma = kv.take_double("noise_sigma", s.noise_sigma);
  const int seed = kv.take_int("seed", static_cast<int>(s.seed));
  if (seed < 0) bad("seed must be >= 0");
  s.seed = static_cast<std::uint64_t>(seed);
  kv.reject_unconsumed();
  s.validate();
  return s;
}

SynthScenario load_scenario(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read scenario file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str(), path.string());
}

std::string format_scenario(const SynthScenario& s) {
  std::ostringstream os;
  os.precision(17);
  os << "width = " << s.width << '\n'
     << "height = " << s.height << '\n'
     << "frames = " << s.frames << '\n'
     << "background_level = " << s.background_level << '\n';
  write_texture(os, "background", s.background);
  os << "object = " << (s.has_object ? "true" : "false") << '\n'
     << "object_shape = " << (s.shape == ShapeKind::Rectangle ? "rectangle" : "ellipse") << '\n'
     << "object_width = " << s.object_width << '\n'
     << "object_height = " << s.object_height << '\n'
     << "object_x = " << s.start_x << '\n'
     << "object_y = " << s.start_y << '\n'
     << "object_velocity_x = " << s.velocity_x << '\n'
     << "object_velocity_y = " << s.velocity_y << '\n'
     << "enter_frame = " << s.enter_frame << '\n'
     << "exit_frame = " << s.exit_frame << '\n';
  write_texture(os, "object", s.object);
  os << "noise_sigma = " << s.noise_sigma << '\n' << "seed = " << s.seed << '\n';
  return os.str();
}

GrayFrame render_background(const SynthScenario& s) {
  const Texture texture(s.background, derived_seed(s.seed, 1, 0));
  std::vector<double> data(static_cast<std::size_t>(s.width) * s.height);
  for (int y = 0; y < s.height; ++y) {
    for (int x = 0; x < s.width; ++x) {
      data[static_cast<std::size_t>(y) * s.width + x] = std::clamp(s.background_level + texture(x, y), 0.0, 1.0);
    }
  }
  return GrayFrame(s.width, s.height, std::move(data));
}

SynthSequence generate(const SynthScenario& s) {
  s.validate();
  const GrayFrame background = render_background(s);
  double background_mean = 0.0;
  for (double v : background.values()) background_mean += v;
  background_mean /= static_cast<double>(background.size());

  // Object appearance in its own coordinates, mean-matched to the background.
  std::vector<double> object_values;
  std::vector<std::uint8_t> object_support;
  if (s.has_object) {
    const Texture texture(s.object, derived_seed(s.seed, 2, 0));
    object_values.resize(static_cast<std::size_t>(s.object_width) * s.object_height);
    object_support.resize(object_values.size());
    double sum = 0.0;
    std::size_t count = 0;
    for (int v = 0; v < s.object_height; ++v) {
      for (int u = 0; u < s.object_width; ++u) {
        const std::size_t i = static_cast<std::size_t>(v) * s.object_width + u;
        object_support[i] = inside_shape(s.shape, u, v, s.object_width, s.object_height) ? 1 : 0;
        object_values[i] = s.background_level + texture(u, v);
        if (object_support[i]) {
          sum += object_values[i];
          ++count;
        }
      }
    }
    const double shift = count ? background_mean - sum / static_cast<double>(count) : 0.0;
    for (auto& v : object_values) v = std::clamp(v + shift, 0.0, 1.0);
  }

  SynthSequence out;
  out.frames.reserve(static_cast<std::size_t>(s.frames));
  out.truths.reserve(static_cast<std::size_t>(s.frames));
  for (int t = 0; t < s.frames; ++t) {
    std::vector<double> data(background.values().begin(), background.values().end());
    BinaryMask truth(s.width, s.height);
    if (s.object_visible(t)) {
      const auto [ox, oy] = s.object_origin(t);
      for (int v = 0; v < s.object_height; ++v) {
        for (int u = 0; u < s.object_width; ++u) {
          const std::size_t i = static_cast<std::size_t>(v) * s.object_width + u;
          if (!object_support[i]) continue;
          data[static_cast<std::size_t>(oy + v) * s.width + (ox + u)] = object_values[i];
          truth.set(ox + u, oy + v, true);
        }
      }
    }
    if (s.noise_sigma > 0.0) {
      std::mt19937_64 rng(derived_seed(s.seed, 3, static_cast<std::uint64_t>(t)));
      std::normal_distribution<double> noise(0.0, s.noise_sigma);
      for (auto& v : data) v += noise(rng);
    }
    for (auto& v : data) v = quantize(v);
    out.frames.emplace_back(s.width, s.height, std::move(data));
    out.truths.push_back(std::move(truth));
  }
  return out;
}

void write_sequence(const SynthSequence& sequence, const fs::path& out_dir) {
  fs::create_directories(out_dir / "frames");
  fs::create_directories(out_dir / "truth");
  for (std::size_t i = 0; i < sequence.frames.size(); ++i) {
    const long index = static_cast<long>(i + 1);
    save_frame(out_dir / "frames" / indexed_name("frame", index), sequence.frames[i]);
    save_mask(out_dir / "truth" / indexed_name("truth", index), sequence.truths[i]);
  }
}

}  // namespace wavefg
