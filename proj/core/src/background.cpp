#include "wavefg/background.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace wavefg {
namespace {

constexpr char kCheckpointMagic[8] = {'W', 'F', 'G', 'G', 'M', 'M', '0', '1'};

template <typename T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <typename T>
T get(std::istream& in) {
  T v{};
  in.read(reinterpret_cast<char*>(&v), sizeof v);
  if (!in) throw std::runtime_error("GMM checkpoint: truncated stream");
  return v;
}

}  // namespace

GmmBackgroundModel::GmmBackgroundModel(int width, int height, GmmParams params)
    : width_(width), height_(height), params_(params) {
  if (width <= 0 || height <= 0) throw DimensionError("GmmBackgroundModel: empty frame size");
  if (params_.max_gaussians < 1) throw std::invalid_argument("GmmBackgroundModel: max_gaussians < 1");
  const auto n = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
  components_.resize(n * static_cast<std::size_t>(params_.max_gaussians));
  used_.assign(n, 0);
}

std::span<const GaussianComponent> GmmBackgroundModel::components(int x, int y) const noexcept {
  const std::size_t p = slot(x, y);
  return {components_.data() + p * params_.max_gaussians, used_[p]};
}

bool GmmBackgroundModel::update_pixel(std::size_t p, double value, double rate) {
  GaussianComponent* c = components_.data() + p * params_.max_gaussians;
  int n = used_[p];

  // Foreground test against the background set of the current model.
  bool in_background = false;
  {
    double cumulative = 0.0;
    for (int j = 0; j < n; ++j) {
      const double d = value - c[j].mean;
      if (d * d <= params_.decision_k * params_.decision_k * c[j].variance) {
        in_background = true;
        break;
      }
      cumulative += c[j].weight;
      if (cumulative >= params_.background_ratio) break;
    }
  }

  int matched = -1;
  for (int j = 0; j < n; ++j) {
    const double d = value - c[j].mean;
    if (d * d <= params_.decision_k * params_.decision_k * c[j].variance) {
      matched = j;
      break;
    }
  }

  for (int j = 0; j < n; ++j) c[j].weight *= 1.0 - rate;
  if (matched >= 0) {
    GaussianComponent& m = c[matched];
    m.weight += rate;
    const double rho = std::min(1.0, rate / m.weight);
    const double d = value - m.mean;
    m.mean = std::clamp(m.mean + rho * d, 0.0, 1.0);
    m.variance = std::clamp(m.variance + rho * (d * d - m.variance), params_.variance_floor,
                            params_.variance_ceiling);
  } else {
    // Spawn, or replace the weakest (last) component.
    if (n < params_.max_gaussians) ++n;
    GaussianComponent& fresh = c[n - 1];
    fresh.weight = n == 1 ? 1.0 : rate;
    fresh.mean = value;
    fresh.variance = std::clamp(params_.variance_init, params_.variance_floor, params_.variance_ceiling);
  }

  double total = 0.0;
  for (int j = 0; j < n; ++j) total += c[j].weight;
  for (int j = 0; j < n; ++j) c[j].weight /= total;
  std::stable_sort(c, c + n, [](const GaussianComponent& a, const GaussianComponent& b) {
    return a.weight > b.weight;
  });
  used_[p] = static_cast<std::uint8_t>(n);
  return !in_background;
}

GmmUpdate GmmBackgroundModel::update(const GrayFrame& frame, double learning_rate) {
  if (frame.width() != width_ || frame.height() != height_) {
    throw DimensionError("GmmBackgroundModel: frame is " + std::to_string(frame.width()) + "x" +
                         std::to_string(frame.height()) + ", model is " + std::to_string(width_) + "x" +
                         std::to_string(height_));
  }
  if (!(learning_rate > 0.0 && learning_rate <= 1.0)) {
    throw std::invalid_argument("GmmBackgroundModel: learning_rate must be in (0, 1]");
  }
  std::vector<std::uint8_t> fg(frame.size(), 0);
  for (std::size_t p = 0; p < frame.size(); ++p) {
    fg[p] = update_pixel(p, frame[p], learning_rate) ? 1 : 0;
  }
  ++frames_;
  return {background(), BinaryMask(width_, height_, std::move(fg))};
}

GrayFrame GmmBackgroundModel::update_and_extract(const GrayFrame& frame, double learning_rate) {
  return update(frame, learning_rate).background;
}

GrayFrame GmmBackgroundModel::background() const {
  std::vector<double> bg(used_.size(), 0.0);
  for (std::size_t p = 0; p < bg.size(); ++p) {
    if (used_[p] > 0) bg[p] = components_[p * params_.max_gaussians].mean;
  }
  return GrayFrame(width_, height_, std::move(bg));
}

// Layout (little-endian host order):
//   magic "WFGGMM01" | int32 width | int32 height | int32 max_gaussians |
//   6 x float64 params (learning_rate, decision_k, variance_init,
//   variance_floor, variance_ceiling, background_ratio) | int64 frames |
//   per pixel: uint8 count, then count x (float64 weight, mean, variance).
void GmmBackgroundModel::save(std::ostream& out) const {
  out.write(kCheckpointMagic, sizeof kCheckpointMagic);
  put<std::int32_t>(out, width_);
  put<std::int32_t>(out, height_);
  put<std::int32_t>(out, params_.max_gaussians);
  put(out, params_.learning_rate);
  put(out, params_.decision_k);
  put(out, params_.variance_init);
  put(out, params_.variance_floor);
  put(out, params_.variance_ceiling);
  put(out, params_.background_ratio);
  put<std::int64_t>(out, frames_);
  for (std::size_t p = 0; p < used_.size(); ++p) {
    put<std::uint8_t>(out, used_[p]);
    for (int j = 0; j < used_[p]; ++j) {
      const auto& c = components_[p * params_.max_gaussians + j];
      put(out, c.weight);
      put(out, c.mean);
      put(out, c.variance);
    }
  }
  if (!out) throw std::runtime_error("GMM checkpoint: write failed");
}

GmmBackgroundModel GmmBackgroundModel::load(std::istream& in) {
  char magic[sizeof kCheckpointMagic];
  in.read(magic, sizeof magic);
  if (!in || std::memcmp(magic, kCheckpointMagic, sizeof magic) != 0) {
    throw std::runtime_error("GMM checkpoint: bad magic or unsupported version");
  }
  const int width = get<std::int32_t>(in);
  const int height = get<std::int32_t>(in);
  GmmParams params;
  params.max_gaussians = get<std::int32_t>(in);
  if (width <= 0 || height <= 0 || params.max_gaussians < 1 || params.max_gaussians > 255) {
    throw std::runtime_error("GMM checkpoint: corrupt header");
  }
  params.learning_rate = get<double>(in);
  params.decision_k = get<double>(in);
  params.variance_init = get<double>(in);
  params.variance_floor = get<double>(in);
  params.variance_ceiling = get<double>(in);
  params.background_ratio = get<double>(in);
  GmmBackgroundModel model(width, height, params);
  model.frames_ = static_cast<long>(get<std::int64_t>(in));
  for (std::size_t p = 0; p < model.used_.size(); ++p) {
    const auto n = get<std::uint8_t>(in);
    if (n > params.max_gaussians) throw std::runtime_error("GMM checkpoint: corrupt component count");
    model.used_[p] = n;
    for (int j = 0; j < n; ++j) {
      auto& c = model.components_[p * params.max_gaussians + j];
      c.weight = get<double>(in);
      c.mean = get<double>(in);
      c.variance = get<double>(in);
    }
  }
  return model;
}

GrayFrame static_background(std::span<const GrayFrame> frames) {
  if (frames.empty()) throw std::invalid_argument("static_background: no frames");
  const int w = frames.front().width();
  const int h = frames.front().height();
  for (const auto& f : frames) {
    if (f.width() != w || f.height() != h) throw DimensionError("static_background: frame size mismatch");
  }
  const std::size_t n = frames.size();
  std::vector<double> out(frames.front().size());
  std::vector<double> samples(n);
  for (std::size_t p = 0; p < out.size(); ++p) {
    for (std::size_t i = 0; i < n; ++i) samples[i] = frames[i][p];
    const auto mid = samples.begin() + static_cast<std::ptrdiff_t>(n / 2);
    std::nth_element(samples.begin(), mid, samples.end());
    if (n % 2 == 1) {
      out[p] = *mid;
    } else {
      const double upper = *mid;
      const double lower = *std::max_element(samples.begin(), mid);
      out[p] = 0.5 * (lower + upper);
    }
  }
  return GrayFrame(w, h, std::move(out));
}

GmmBackgroundProvider::GmmBackgroundProvider(int width, int height, GmmParams params)
    : model_(width, height, params) {}

GmmBackgroundProvider::GmmBackgroundProvider(GmmBackgroundModel model) : model_(std::move(model)) {}

GrayFrame GmmBackgroundProvider::next(const GrayFrame& frame) { return model_.update_and_extract(frame); }

StaticBackgroundProvider::StaticBackgroundProvider(GrayFrame background) : background_(std::move(background)) {}

GrayFrame StaticBackgroundProvider::next(const GrayFrame& frame) {
  if (frame.width() != background_.width() || frame.height() != background_.height()) {
    throw DimensionError("StaticBackgroundProvider: frame size differs from the background image");
  }
  return background_;
}

}  // namespace wavefg
