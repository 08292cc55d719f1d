#pragma once

#include "semfeat/core.hpp"

namespace semfeat {

/// Distance-bin parameters. Defaults are three bins with a scaling factor of three.
struct SfmParams {
    int bins = 3;
    double rho = 3.0;
};

/// Occurrence count per object category.
Sfv sfv(const DetectionSet& detections);

/// Bin index in [1, bins] for a center distance: ceil(rho * distance / diagonal), clamped.
int distance_bin(double distance, double diagonal, const SfmParams& params);

/// Inter-object distance histogram over every ordered pair of distinct detections.
///
/// Each ordered pair (a, b), a != b, with categories (i, j) adds one to
/// b(i, j, k) where k is the bin of the distance between the two box centers
/// relative to the image diagonal. Pairs of the same category therefore count
/// twice and self-pairs never count. Throws ConfigError for bins < 1 or rho <= 0.
Sfm sfm(const DetectionSet& detections, const SfmParams& params = {});

}  // namespace semfeat
