#include "semfeat/objfeat.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "semfeat/error.hpp"

namespace semfeat {

namespace {

void check_params(const SfmParams& params) {
    if (params.bins < 1) throw ConfigError(fmt::format("distance bin count must be >= 1, got {}", params.bins));
    if (!(params.rho > 0.0) || !std::isfinite(params.rho)) {
        throw ConfigError(fmt::format("distance scaling factor must be positive, got {}", params.rho));
    }
}

}  // namespace

Sfv sfv(const DetectionSet& detections) {
    Sfv out(detections.categories());
    for (const Detection& d : detections.detections()) ++out.count(d.category);
    return out;
}

int distance_bin(double distance, double diagonal, const SfmParams& params) {
    const double scaled = std::ceil(params.rho * distance / diagonal);
    if (!(scaled >= 1.0)) return 1;
    if (scaled >= static_cast<double>(params.bins)) return params.bins;
    return static_cast<int>(scaled);
}

Sfm sfm(const DetectionSet& detections, const SfmParams& params) {
    check_params(params);
    Sfm out(detections.categories(), params.bins);
    const auto dets = detections.detections();
    const double diagonal = std::hypot(static_cast<double>(detections.image_width()),
                                       static_cast<double>(detections.image_height()));

    // The distance is symmetric, so each unordered pair covers both orderings.
    for (std::size_t a = 0; a < dets.size(); ++a) {
        for (std::size_t b = a + 1; b < dets.size(); ++b) {
            const double dist = std::hypot(dets[a].box.center_x() - dets[b].box.center_x(),
                                           dets[a].box.center_y() - dets[b].box.center_y());
            const int k = distance_bin(dist, diagonal, params);
            ++out.at(dets[a].category, dets[b].category, k);
            ++out.at(dets[b].category, dets[a].category, k);
        }
    }
    return out;
}

}  // namespace semfeat
