#pragma once

#include <optional>
#include <vector>

#include "semfeat/core.hpp"
#include "semfeat/objfeat.hpp"

namespace semfeat {

/// Any subset of the four feature families plus an optional external embedding.
/// Blocks that were not computed stay empty.
struct FeatureSet {
    std::optional<ShmfMatrix> shmf;
    std::optional<SsfMatrix> ssf;
    std::optional<Sfv> sfv;
    std::optional<Sfm> sfm;
    std::optional<std::vector<double>> global;

    bool complete() const noexcept { return shmf && ssf && sfv && sfm; }

    /// Throws ConfigError naming the first missing block.
    FeatureBundle to_bundle() const;

    bool operator==(const FeatureSet&) const = default;
};

/// SHMF and SSF from a single moment pass over the mask.
FeatureSet extract_segmentation(const SegmentationMask& mask);

/// SFV and SFM from a detection set.
FeatureSet extract_objects(const DetectionSet& detections, const SfmParams& params);

/// Full extraction; either input may be absent, in which case its blocks stay empty.
FeatureSet extract_all(const SegmentationMask* mask, const DetectionSet* detections, const SfmParams& params);

}  // namespace semfeat
