#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "semfeat/core.hpp"

namespace semfeat {

/// Raw moment orders p+q <= 3, in storage order.
enum class RawOrder : std::uint8_t { m00, m10, m01, m20, m11, m02, m30, m21, m12, m03 };
/// Central / normalized moment orders p+q in {2, 3}, in storage order.
enum class CentralOrder : std::uint8_t { mu20, mu11, mu02, mu30, mu21, mu12, mu03 };

/// Moments of one segmentation-category.
///
/// Raw moments are exact integer sums over 1-based pixel coordinates
/// (j = column + 1, i = row + 1). Central moments are derived from them
/// with exact integer arithmetic and only then converted to double, so they
/// are bit-identical for any two pixel sets related by an integer shift.
struct CategoryMoments {
    std::array<std::uint64_t, 10> raw{};
    bool present = false;  ///< M00 > 0
    double centroid_x = 0;  ///< C_j = M10 / M00
    double centroid_y = 0;  ///< C_i = M01 / M00
    std::array<double, 7> central{};
    std::array<double, 7> normalized{};

    std::uint64_t raw_at(RawOrder o) const { return raw[static_cast<std::size_t>(o)]; }
    double raw_moment(int p, int q) const;
    double central_moment(int p, int q) const;     ///< mu_pq; mu00 = M00, mu10 = mu01 = 0
    double normalized_moment(int p, int q) const;  ///< eta_pq for p+q in {2, 3}
    std::uint64_t pixel_count() const { return raw[0]; }
};

/// Per-category moments of one mask; index 0 (void) is kept but never derived or used.
class MomentSet {
public:
    MomentSet(int categories, int width, int height)
        : categories_(categories), width_(width), height_(height),
          moments_(static_cast<std::size_t>(categories) + 1) {}

    int categories() const noexcept { return categories_; }
    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    bool derived() const noexcept { return derived_; }

    const CategoryMoments& category(int n) const { return moments_.at(static_cast<std::size_t>(n)); }
    CategoryMoments& category(int n) { return moments_.at(static_cast<std::size_t>(n)); }

    void mark_derived() noexcept { derived_ = true; }

private:
    int categories_;
    int width_;
    int height_;
    bool derived_ = false;
    std::vector<CategoryMoments> moments_;
};

/// h1..h7 and their log-rescaled forms.
struct HuVector {
    std::array<double, 7> raw{};
    std::array<double, 7> rescaled{};
};

/// Values with |h| below this are treated as zero by the log rescale.
inline constexpr double kHuZeroGuard = 1e-30;

/// One pass over the mask; every pixel updates only its own category's accumulators.
MomentSet accumulate_raw_moments(const SegmentationMask& mask);

/// Centroid, central and normalized moments from raw moments. Absent categories stay zero.
MomentSet derive_moments(MomentSet moments);

/// accumulate_raw_moments followed by derive_moments.
MomentSet compute_moments(const SegmentationMask& mask);

/// Hu invariants from normalized central moments.
HuVector hu_from_normalized(const std::array<double, 7>& eta);

/// -sign(h) * ln|h|, or 0 when |h| < kHuZeroGuard.
double log_rescale(double h);

/// Requires derived moments (std::logic_error otherwise).
HuVector hu_invariants(const MomentSet& moments, int category);

ShmfMatrix shmf(const MomentSet& moments);
ShmfMatrix shmf(const SegmentationMask& mask);

}  // namespace semfeat
