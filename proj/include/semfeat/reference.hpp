#pragma once

#include "semfeat/core.hpp"
#include "semfeat/moments.hpp"

namespace semfeat::reference {

/// Raw moments computed with one full pass over the mask per category.
/// Baseline for throughput comparisons; results equal accumulate_raw_moments.
MomentSet multipass_raw_moments(const SegmentationMask& mask);

}  // namespace semfeat::reference
