#include "wavefg/frame.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wavefg {

GrayFrame::GrayFrame(int width, int height, std::vector<double> data)
    : plane_(width, height, std::move(data)) {
  validate();
}

GrayFrame::GrayFrame(Plane<double> plane) : plane_(std::move(plane)) { validate(); }

GrayFrame GrayFrame::filled(int width, int height, double value) {
  return GrayFrame(Plane<double>(width, height, value));
}

void GrayFrame::validate() const {
  const auto values = plane_.values();
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
      throw std::domain_error("GrayFrame: value " + std::to_string(v) + " at index " +
                              std::to_string(i) + " outside [0,1]");
    }
  }
}

BinaryMask::BinaryMask(int width, int height, bool fill) : plane_(width, height, fill ? 1 : 0) {}

BinaryMask::BinaryMask(int width, int height, std::vector<std::uint8_t> data)
    : plane_(width, height, std::move(data)) {
  for (auto& v : plane_.values()) v = v ? 1 : 0;
}

BinaryMask::BinaryMask(Plane<std::uint8_t> plane) : plane_(std::move(plane)) {
  for (auto& v : plane_.values()) v = v ? 1 : 0;
}

std::size_t BinaryMask::count() const noexcept {
  const auto v = plane_.values();
  return static_cast<std::size_t>(std::count(v.begin(), v.end(), std::uint8_t{1}));
}

const char* band_name(Band band) noexcept {
  switch (band) {
    case Band::LL: return "LL";
    case Band::LH: return "LH";
    case Band::HL: return "HL";
    case Band::HH: return "HH";
  }
  return "?";
}

const CoefficientPlane& LevelBands::operator[](Band b) const noexcept {
  switch (b) {
    case Band::LL: return ll;
    case Band::LH: return lh;
    case Band::HL: return hl;
    case Band::HH: break;
  }
  return hh;
}

CoefficientPlane& LevelBands::operator[](Band b) noexcept {
  return const_cast<CoefficientPlane&>(std::as_const(*this)[b]);
}

WaveletPyramid::WaveletPyramid(std::vector<LevelBands> levels) : levels_(std::move(levels)) {
  if (levels_.empty()) return;
  width_ = levels_.front().ll.width();
  height_ = levels_.front().ll.height();
  for (const auto& lv : levels_) {
    for (Band b : kAllBands) {
      if (lv[b].width() != width_ || lv[b].height() != height_) {
        throw DimensionError("WaveletPyramid: every band must match the source frame size");
      }
    }
  }
}

const CoefficientPlane& WaveletPyramid::band(int level, Band b) const { return this->level(level)[b]; }

const LevelBands& WaveletPyramid::level(int level) const {
  if (level < 1 || level > levels()) {
    throw std::out_of_range("WaveletPyramid: level " + std::to_string(level) + " not in 1.." +
                            std::to_string(levels()));
  }
  return levels_[static_cast<std::size_t>(level - 1)];
}

}  // namespace wavefg
