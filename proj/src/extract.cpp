#include "semfeat/extract.hpp"

#include "semfeat/error.hpp"
#include "semfeat/moments.hpp"
#include "semfeat/ssf.hpp"

namespace semfeat {

FeatureBundle FeatureSet::to_bundle() const {
    if (!shmf) throw ConfigError("feature set is missing the shmf block");
    if (!ssf) throw ConfigError("feature set is missing the ssf block");
    if (!sfv) throw ConfigError("feature set is missing the sfv block");
    if (!sfm) throw ConfigError("feature set is missing the sfm block");
    if (shmf->categories() != ssf->categories()) throw ConfigError("shmf and ssf disagree on the category count");
    if (sfv->categories() != sfm->categories()) throw ConfigError("sfv and sfm disagree on the category count");
    return FeatureBundle{*shmf, *ssf, *sfv, *sfm, global};
}

FeatureSet extract_segmentation(const SegmentationMask& mask) {
    const MomentSet moments = compute_moments(mask);
    FeatureSet out;
    out.shmf = shmf(moments);
    out.ssf = ssf(moments);
    return out;
}

FeatureSet extract_objects(const DetectionSet& detections, const SfmParams& params) {
    FeatureSet out;
    out.sfv = sfv(detections);
    out.sfm = sfm(detections, params);
    return out;
}

FeatureSet extract_all(const SegmentationMask* mask, const DetectionSet* detections, const SfmParams& params) {
    FeatureSet out;
    if (mask) out = extract_segmentation(*mask);
    if (detections) {
        FeatureSet obj = extract_objects(*detections, params);
        out.sfv = std::move(obj.sfv);
        out.sfm = std::move(obj.sfm);
    }
    return out;
}

}  // namespace semfeat
