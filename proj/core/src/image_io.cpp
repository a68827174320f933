#include "wavefg/image_io.hpp"

#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <limits>
#include <sstream>
#include <string>

namespace wavefg {
namespace fs = std::filesystem;

namespace {

[[noreturn]] void fail(const fs::path& path, const std::string& what) {
  throw IoError(path.string() + ": " + what);
}

std::vector<unsigned char> read_all(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(path, "cannot open file");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class PgmHeaderReader {
 public:
  PgmHeaderReader(const std::vector<unsigned char>& bytes, const fs::path& path)
      : bytes_(bytes), path_(path) {}

  long next_int() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size() || !std::isdigit(bytes_[pos_])) fail(path_, "truncated or malformed PGM header");
    long value = 0;
    while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
      value = value * 10 + (bytes_[pos_++] - '0');
      if (value > std::numeric_limits<int>::max()) fail(path_, "PGM header value too large");
    }
    return value;
  }

  // Exactly one whitespace byte separates maxval from binary raster data.
  void skip_single_whitespace() {
    if (pos_ >= bytes_.size() || !std::isspace(bytes_[pos_])) fail(path_, "truncated PGM header");
    ++pos_;
  }

  std::size_t pos() const noexcept { return pos_; }
  void seek(std::size_t p) noexcept { pos_ = p; }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      if (bytes_[pos_] == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else if (std::isspace(bytes_[pos_])) {
        ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& bytes_;
  const fs::path& path_;
  std::size_t pos_ = 0;
};

Plane<double> decode_pgm(const std::vector<unsigned char>& bytes, const fs::path& path) {
  if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2')) {
    fail(path, "not a PGM file");
  }
  const bool binary = bytes[1] == '5';
  PgmHeaderReader reader(bytes, path);
  reader.seek(2);
  const long width = reader.next_int();
  const long height = reader.next_int();
  const long maxval = reader.next_int();
  if (width <= 0 || height <= 0) fail(path, "PGM has zero size");
  if (maxval <= 0) fail(path, "PGM maxval must be positive");
  if (maxval > 255) fail(path, "unsupported bit depth (maxval " + std::to_string(maxval) + ", only 8-bit supported)");

  const std::size_t n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  std::vector<double> data(n);
  const double scale = static_cast<double>(maxval);
  if (binary) {
    reader.skip_single_whitespace();
    if (bytes.size() - reader.pos() < n) fail(path, "truncated PGM raster");
    for (std::size_t i = 0; i < n; ++i) {
      const unsigned v = bytes[reader.pos() + i];
      if (v > maxval) fail(path, "PGM sample exceeds maxval");
      data[i] = v / scale;
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const long v = reader.next_int();
      if (v > maxval) fail(path, "PGM sample exceeds maxval");
      data[i] = static_cast<double>(v) / scale;
    }
  }
  return Plane<double>(static_cast<int>(width), static_cast<int>(height), std::move(data));
}

Plane<double> decode_png(const fs::path& path) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) fail(path, image.message);

  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&image);
    fail(path, "unsupported bit depth (16-bit PNG, only 8-bit supported)");
  }
  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  const bool alpha = (image.format & PNG_FORMAT_FLAG_ALPHA) != 0;
  if (color) {
    image.format = alpha ? PNG_FORMAT_RGBA : PNG_FORMAT_RGB;
  } else {
    image.format = alpha ? PNG_FORMAT_GA : PNG_FORMAT_GRAY;
  }
  const int channels = static_cast<int>(PNG_IMAGE_PIXEL_CHANNELS(image.format));
  std::vector<png_byte> buffer(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, buffer.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    fail(path, msg);
  }

  const int width = static_cast<int>(image.width);
  const int height = static_cast<int>(image.height);
  std::vector<double> data(static_cast<std::size_t>(width) * height);
  for (std::size_t i = 0; i < data.size(); ++i) {
    const png_byte* px = buffer.data() + i * channels;
    double value = px[0];
    if (color) value = 0.299 * px[0] + 0.587 * px[1] + 0.114 * px[2];
    data[i] = std::clamp(value / 255.0, 0.0, 1.0);
  }
  return Plane<double>(width, height, std::move(data));
}

void write_pgm(const fs::path& path, int width, int height, const std::vector<unsigned char>& raster) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(path, "cannot open file for writing");
  out << "P5\n" << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(raster.data()), static_cast<std::streamsize>(raster.size()));
  if (!out) fail(path, "write failed");
}

}  // namespace

GrayFrame load_frame(const fs::path& path) {
  const auto bytes = read_all(path);
  static constexpr unsigned char kPngMagic[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (bytes.size() >= 8 && std::equal(std::begin(kPngMagic), std::end(kPngMagic), bytes.begin())) {
    return GrayFrame(decode_png(path));
  }
  return GrayFrame(decode_pgm(bytes, path));
}

void save_frame(const fs::path& path, const GrayFrame& frame) {
  std::vector<unsigned char> raster(frame.size());
  for (std::size_t i = 0; i < raster.size(); ++i) {
    raster[i] = static_cast<unsigned char>(std::lround(frame[i] * 255.0));
  }
  write_pgm(path, frame.width(), frame.height(), raster);
}

void save_mask(const fs::path& path, const BinaryMask& mask) {
  std::vector<unsigned char> raster(mask.size());
  for (std::size_t i = 0; i < raster.size(); ++i) raster[i] = mask[i] ? 255 : 0;
  write_pgm(path, mask.width(), mask.height(), raster);
}

BinaryMask load_mask(const fs::path& path) {
  const GrayFrame frame = load_frame(path);
  std::vector<std::uint8_t> data(frame.size());
  for (std::size_t i = 0; i < data.size(); ++i) data[i] = frame[i] >= 128.0 / 255.0 ? 1 : 0;
  return BinaryMask(frame.width(), frame.height(), std::move(data));
}

void save_plane_visualization(const fs::path& path, const CoefficientPlane& plane) {
  const auto values = plane.values();
  std::vector<unsigned char> raster(values.size(), 0);
  if (!values.empty()) {
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    const double range = *hi - *lo;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double t = range > 0.0 ? (values[i] - *lo) / range : 0.0;
      raster[i] = static_cast<unsigned char>(std::lround(t * 255.0));
    }
  }
  write_pgm(path, plane.width(), plane.height(), raster);
}

std::vector<fs::path> list_frames(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw IoError(dir.string() + ": not a directory");
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    auto ext = entry.path().extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
    if (ext == ".pgm" || ext == ".png") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

long frame_index(const fs::path& path) {
  const std::string stem = path.stem().string();
  std::size_t start = stem.size();
  while (start > 0 && std::isdigit(static_cast<unsigned char>(stem[start - 1]))) --start;
  if (start == stem.size()) return -1;
  const std::string digits = stem.substr(start, 18);
  return std::stol(digits);
}

std::string indexed_name(const std::string& prefix, long index, const std::string& extension) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%06ld", index);
  return prefix + "_" + buf + extension;
}

}  // namespace wavefg
