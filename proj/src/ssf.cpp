#include "semfeat/ssf.hpp"

#include <cmath>
#include <stdexcept>

namespace semfeat {

SsfMatrix::Row ssf_row(const MomentSet& moments, int category) {
    if (!moments.derived()) throw std::logic_error("ssf_row requires derived moments");
    const CategoryMoments& c = moments.category(category);
    SsfMatrix::Row row{};
    if (!c.present) return row;

    const double w = moments.width();
    const double h = moments.height();
    const double count = static_cast<double>(c.pixel_count());
    // variance of the coordinates is mu20 / M00 (and mu02 / M00)
    const double var_x = c.central_moment(2, 0) / count;
    const double var_y = c.central_moment(0, 2) / count;

    row[0] = count / (w * h);
    row[1] = c.centroid_x / w;
    row[2] = c.centroid_y / h;
    row[3] = std::sqrt(var_x > 0 ? var_x : 0.0) / w;
    row[4] = std::sqrt(var_y > 0 ? var_y : 0.0) / h;
    return row;
}

SsfMatrix ssf(const MomentSet& moments) {
    SsfMatrix out(moments.categories());
    for (int n = 1; n <= moments.categories(); ++n) out.row(n) = ssf_row(moments, n);
    return out;
}

SsfMatrix ssf(const SegmentationMask& mask) { return ssf(compute_moments(mask)); }

}  // namespace semfeat
