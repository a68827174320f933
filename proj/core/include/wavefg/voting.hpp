#pragma once

#include <span>

#include "wavefg/decisions.hpp"
#include "wavefg/frame.hpp"
#include "wavefg/weights.hpp"

namespace wavefg {

/// Accumulated weighted vote V and the largest vote attainable at each pixel.
struct VoteMap {
  CoefficientPlane votes;
  CoefficientPlane max_votes;
};

/// V = sum_i w_n(i) * w_c(level(i)) * (w_tW(i) * V_W(i) + w_tL(i) * V_L(i)),
/// with V_max the same sum with every vote set to 1. `votes` is indexed by
/// band_index() and must hold 4 * weights.levels() entries.
VoteMap accumulate(std::span<const BandVotes> votes, const WeightSet& weights);

/// Foreground iff V > tau * V_max. A pixel with V_max = 0 stays background.
BinaryMask threshold(const VoteMap& map, double tau);

/// One 3x3 median pass (majority of nine, replicated borders) when enabled.
BinaryMask postprocess(const BinaryMask& mask, bool enabled);

}  // namespace wavefg
