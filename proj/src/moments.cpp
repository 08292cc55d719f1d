#include "semfeat/moments.hpp"

#include <cmath>
#include <stdexcept>

namespace semfeat {

namespace {

// Signed 128-bit intermediates hold m^2 * M30 and M10^3 for masks up to
// kMaxMaskDimension per side with roughly three orders of magnitude to spare.
using Wide = __int128;

constexpr std::size_t idx(RawOrder o) { return static_cast<std::size_t>(o); }
constexpr std::size_t idx(CentralOrder o) { return static_cast<std::size_t>(o); }

int raw_index(int p, int q) {
    switch (p * 4 + q) {
        case 0: return 0;
        case 4: return 1;
        case 1: return 2;
        case 8: return 3;
        case 5: return 4;
        case 2: return 5;
        case 12: return 6;
        case 9: return 7;
        case 6: return 8;
        case 3: return 9;
        default: throw std::out_of_range("raw moment order must satisfy p + q <= 3");
    }
}

int central_index(int p, int q) {
    const int r = raw_index(p, q);
    if (r < 3) throw std::out_of_range("central moment order must satisfy p + q in {2, 3}");
    return r - 3;
}

}  // namespace

double CategoryMoments::raw_moment(int p, int q) const { return static_cast<double>(raw[raw_index(p, q)]); }

double CategoryMoments::central_moment(int p, int q) const {
    if (p + q == 0) return static_cast<double>(raw[0]);
    if (p + q == 1) return 0.0;
    return central[central_index(p, q)];
}

double CategoryMoments::normalized_moment(int p, int q) const { return normalized[central_index(p, q)]; }

MomentSet accumulate_raw_moments(const SegmentationMask& mask) {
    const int w = mask.width();
    const int h = mask.height();
    const int slots = mask.categories() + 1;
    MomentSet out(mask.categories(), w, h);

    std::vector<std::uint64_t> j2(static_cast<std::size_t>(w));
    std::vector<std::uint64_t> j3(static_cast<std::size_t>(w));
    for (int col = 0; col < w; ++col) {
        const std::uint64_t j = static_cast<std::uint64_t>(col) + 1;
        j2[col] = j * j;
        j3[col] = j * j * j;
    }

    // Per-row partial sums of (1, j, j^2, j^3) for every category, folded into the
    // ten raw moments with the row's powers of i once the row is done.
    std::vector<std::uint64_t> row_sums(static_cast<std::size_t>(slots) * 4, 0);

    for (int r = 0; r < h; ++r) {
        const auto row = mask.row(r);
        for (int col = 0; col < w; ++col) {
            std::uint64_t* s = &row_sums[static_cast<std::size_t>(row[col]) * 4];
            s[0] += 1;
            s[1] += static_cast<std::uint64_t>(col) + 1;
            s[2] += j2[col];
            s[3] += j3[col];
        }
        const std::uint64_t i = static_cast<std::uint64_t>(r) + 1;
        const std::uint64_t i2 = i * i;
        const std::uint64_t i3 = i2 * i;
        for (int n = 1; n < slots; ++n) {
            std::uint64_t* s = &row_sums[static_cast<std::size_t>(n) * 4];
            if (s[0] == 0) continue;
            auto& m = out.category(n).raw;
            m[idx(RawOrder::m00)] += s[0];
            m[idx(RawOrder::m10)] += s[1];
            m[idx(RawOrder::m20)] += s[2];
            m[idx(RawOrder::m30)] += s[3];
            m[idx(RawOrder::m01)] += s[0] * i;
            m[idx(RawOrder::m11)] += s[1] * i;
            m[idx(RawOrder::m21)] += s[2] * i;
            m[idx(RawOrder::m02)] += s[0] * i2;
            m[idx(RawOrder::m12)] += s[1] * i2;
            m[idx(RawOrder::m03)] += s[0] * i3;
            s[0] = s[1] = s[2] = s[3] = 0;
        }
        // void sums are never folded
        std::fill_n(row_sums.begin(), 4, 0);
    }
    for (int n = 1; n < slots; ++n) out.category(n).present = out.category(n).raw[0] > 0;
    return out;
}

MomentSet derive_moments(MomentSet moments) {
    for (int n = 1; n <= moments.categories(); ++n) {
        CategoryMoments& c = moments.category(n);
        c.central.fill(0.0);
        c.normalized.fill(0.0);
        c.centroid_x = c.centroid_y = 0.0;
        if (!c.present) continue;

        const auto raw = [&c](RawOrder o) { return static_cast<Wide>(c.raw[idx(o)]); };
        const Wide m = raw(RawOrder::m00);
        const Wide x = raw(RawOrder::m10);
        const Wide y = raw(RawOrder::m01);
        const Wide mm = m * m;

        // m * mu_pq for order 2 and m^2 * mu_pq for order 3: binomial expansion about
        // the centroid with the 1/m factors cleared, so every term is an exact integer.
        const Wide n20 = m * raw(RawOrder::m20) - x * x;
        const Wide n11 = m * raw(RawOrder::m11) - x * y;
        const Wide n02 = m * raw(RawOrder::m02) - y * y;
        const Wide n30 = mm * raw(RawOrder::m30) - 3 * m * x * raw(RawOrder::m20) + 2 * x * x * x;
        const Wide n21 = mm * raw(RawOrder::m21) - 2 * m * x * raw(RawOrder::m11) - m * y * raw(RawOrder::m20) +
                         2 * x * x * y;
        const Wide n12 = mm * raw(RawOrder::m12) - 2 * m * y * raw(RawOrder::m11) - m * x * raw(RawOrder::m02) +
                         2 * y * y * x;
        const Wide n03 = mm * raw(RawOrder::m03) - 3 * m * y * raw(RawOrder::m02) + 2 * y * y * y;

        const double md = static_cast<double>(c.raw[0]);
        const double md2 = md * md;
        c.centroid_x = static_cast<double>(c.raw[idx(RawOrder::m10)]) / md;
        c.centroid_y = static_cast<double>(c.raw[idx(RawOrder::m01)]) / md;

        c.central[idx(CentralOrder::mu20)] = static_cast<double>(n20) / md;
        c.central[idx(CentralOrder::mu11)] = static_cast<double>(n11) / md;
        c.central[idx(CentralOrder::mu02)] = static_cast<double>(n02) / md;
        c.central[idx(CentralOrder::mu30)] = static_cast<double>(n30) / md2;
        c.central[idx(CentralOrder::mu21)] = static_cast<double>(n21) / md2;
        c.central[idx(CentralOrder::mu12)] = static_cast<double>(n12) / md2;
        c.central[idx(CentralOrder::mu03)] = static_cast<double>(n03) / md2;

        // eta_pq = mu_pq / mu00^((p+q)/2 + 1)
        const double norm2 = md2;
        const double norm3 = std::pow(md, 2.5);
        for (std::size_t k = 0; k < 3; ++k) c.normalized[k] = c.central[k] / norm2;
        for (std::size_t k = 3; k < 7; ++k) c.normalized[k] = c.central[k] / norm3;
    }
    moments.mark_derived();
    return moments;
}

MomentSet compute_moments(const SegmentationMask& mask) { return derive_moments(accumulate_raw_moments(mask)); }

HuVector hu_from_normalized(const std::array<double, 7>& eta) {
    const double e20 = eta[idx(CentralOrder::mu20)];
    const double e11 = eta[idx(CentralOrder::mu11)];
    const double e02 = eta[idx(CentralOrder::mu02)];
    const double e30 = eta[idx(CentralOrder::mu30)];
    const double e21 = eta[idx(CentralOrder::mu21)];
    const double e12 = eta[idx(CentralOrder::mu12)];
    const double e03 = eta[idx(CentralOrder::mu03)];

    // Shared terms are written so that swapping the axes or reflecting one of
    // them maps each term onto another term (or its exact negation); the
    // resulting invariants are then bit-identical, with h7 exactly negated
    // under reflection.
    const double diff2 = e20 - e02;
    const double a = e30 - 3.0 * e12;
    const double c = 3.0 * e21 - e03;
    const double b = e30 + e12;
    const double d = e21 + e03;
    const double b2 = b * b;
    const double d2 = d * d;
    const double b2_3d2 = b2 - 3.0 * d2;
    const double b2x3_d2 = 3.0 * b2 - d2;

    HuVector hu;
    hu.raw[0] = e20 + e02;
    hu.raw[1] = diff2 * diff2 + 4.0 * e11 * e11;
    hu.raw[2] = a * a + c * c;
    hu.raw[3] = b2 + d2;
    hu.raw[4] = a * b * b2_3d2 + c * d * b2x3_d2;
    hu.raw[5] = diff2 * (b2 - d2) + 4.0 * e11 * (b * d);
    hu.raw[6] = c * b * b2_3d2 - a * d * b2x3_d2;
    for (std::size_t k = 0; k < 7; ++k) hu.rescaled[k] = log_rescale(hu.raw[k]);
    return hu;
}

double log_rescale(double h) {
    if (!(std::fabs(h) >= kHuZeroGuard)) return 0.0;
    return h > 0 ? -std::log(h) : std::log(-h);
}

HuVector hu_invariants(const MomentSet& moments, int category) {
    if (!moments.derived()) throw std::logic_error("hu_invariants requires derived moments");
    const CategoryMoments& c = moments.category(category);
    if (!c.present) return HuVector{};
    return hu_from_normalized(c.normalized);
}

ShmfMatrix shmf(const MomentSet& moments) {
    ShmfMatrix out(moments.categories());
    for (int n = 1; n <= moments.categories(); ++n) out.row(n) = hu_invariants(moments, n).rescaled;
    return out;
}

ShmfMatrix shmf(const SegmentationMask& mask) { return shmf(compute_moments(mask)); }

}  // namespace semfeat
