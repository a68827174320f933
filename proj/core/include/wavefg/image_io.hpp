#pragma once

#include <filesystem>
#include <stdexcept>
#include <vector>

#include "wavefg/frame.hpp"

namespace wavefg {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Reads an 8-bit PGM (P5 or P2) or PNG. Color PNGs are reduced to Rec. 601
/// luma; values are divided by 255.
GrayFrame load_frame(const std::filesystem::path& path);

/// Writes a binary 8-bit PGM; values are rounded to the nearest of 256 levels.
void save_frame(const std::filesystem::path& path, const GrayFrame& frame);

/// Masks are stored as PGMs with 0 (background) and 255 (foreground).
void save_mask(const std::filesystem::path& path, const BinaryMask& mask);
/// Any pixel >= 128 reads back as foreground.
BinaryMask load_mask(const std::filesystem::path& path);

/// Debug view: the plane is affinely rescaled so its range spans 0..255.
void save_plane_visualization(const std::filesystem::path& path, const CoefficientPlane& plane);

/// `.pgm` / `.png` files in `dir`, sorted by filename.
std::vector<std::filesystem::path> list_frames(const std::filesystem::path& dir);

/// Trailing decimal index of a filename stem ("frame_000012.pgm" -> 12), or -1.
long frame_index(const std::filesystem::path& path);

/// "<prefix>_000012.pgm".
std::string indexed_name(const std::string& prefix, long index, const std::string& extension = ".pgm");

}  // namespace wavefg
