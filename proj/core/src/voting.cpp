#include "wavefg/voting.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace wavefg {

VoteMap accumulate(std::span<const BandVotes> votes, const WeightSet& weights) {
  if (votes.empty()) throw DimensionError("accumulate: no bands");
  const int w = votes.front().coefficient.width();
  const int h = votes.front().coefficient.height();
  weights.check(w, h);
  if (static_cast<int>(votes.size()) != weights.band_count()) {
    throw DimensionError("accumulate: " + std::to_string(votes.size()) + " vote bands for " +
                         std::to_string(weights.band_count()) + " weighted bands");
  }

  VoteMap map{CoefficientPlane(w, h, 0.0), CoefficientPlane(w, h, 0.0)};
  for (int level = 1; level <= weights.levels(); ++level) {
    const double wc = weights.translation[static_cast<std::size_t>(level - 1)];
    for (Band band : kAllBands) {
      const auto i = static_cast<std::size_t>(band_index(level, band));
      const BandVotes& v = votes[i];
      require_same_shape(v.coefficient, map.votes, "accumulate");
      require_same_shape(v.texture, map.votes, "accumulate");
      const double scale = weights.noise[i] * wc;
      if (scale == 0.0) continue;
      const auto& tw = weights.coefficient[i];
      const auto& tl = weights.texture[i];
      for (std::size_t p = 0; p < map.votes.size(); ++p) {
        map.votes[p] += scale * (tw[p] * v.coefficient[p] + tl[p] * v.texture[p]);
        map.max_votes[p] += scale * (tw[p] + tl[p]);
      }
    }
  }
  return map;
}

BinaryMask threshold(const VoteMap& map, double tau) {
  require_same_shape(map.votes, map.max_votes, "threshold");
  if (!(tau > 0.0 && tau <= 1.0)) throw std::invalid_argument("threshold: tau must be in (0, 1]");
  std::vector<std::uint8_t> out(map.votes.size());
  for (std::size_t p = 0; p < out.size(); ++p) out[p] = map.votes[p] > tau * map.max_votes[p] ? 1 : 0;
  return BinaryMask(map.votes.width(), map.votes.height(), std::move(out));
}

BinaryMask postprocess(const BinaryMask& mask, bool enabled) {
  if (!enabled) return mask;
  const int w = mask.width();
  const int h = mask.height();
  BinaryMask out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int on = 0;
      for (int dy = -1; dy <= 1; ++dy) {
        const int yy = std::clamp(y + dy, 0, h - 1);
        for (int dx = -1; dx <= 1; ++dx) on += mask(std::clamp(x + dx, 0, w - 1), yy) ? 1 : 0;
      }
      out.set(x, y, on >= 5);
    }
  }
  return out;
}

}  // namespace wavefg
