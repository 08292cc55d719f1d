#pragma once

#include "semfeat/core.hpp"
#include "semfeat/moments.hpp"

namespace semfeat {

/// Column order of an SSF row.
enum class SsfColumn : std::uint8_t { pixel_share, mean_x, mean_y, spread_x, spread_y };

/// (P'_C, I'_mu_x, I'_mu_y, I'_sigma_x, I'_sigma_y) of one category, read off the
/// shared moment set. Positions and spreads are normalized by the mask width
/// (x) and height (y); absent categories give a zero row.
SsfMatrix::Row ssf_row(const MomentSet& moments, int category);

SsfMatrix ssf(const MomentSet& moments);
SsfMatrix ssf(const SegmentationMask& mask);

}  // namespace semfeat
