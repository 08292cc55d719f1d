#include "semfeat/invariance.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include <fmt/format.h>

#include "semfeat/error.hpp"
#include "semfeat/moments.hpp"
#include "semfeat/ssf.hpp"

namespace semfeat {

InvarianceKind classify(const synth::MaskTransform& transform) {
    if (std::holds_alternative<synth::Reflect>(transform)) return InvarianceKind::reflection;
    if (std::holds_alternative<synth::Scale>(transform)) return InvarianceKind::scale;
    if (std::holds_alternative<synth::Rotate>(transform)) return InvarianceKind::rotation;
    return InvarianceKind::exact;
}

TransformCheck check_transform(const SegmentationMask& mask, const synth::MaskTransform& transform,
                               const InvarianceTolerances& tol) {
    const SegmentationMask moved = synth::transform_mask(mask, transform);
    const MomentSet before = compute_moments(mask);
    const MomentSet after = compute_moments(moved);
    const SsfMatrix ssf_before = ssf(before);
    const SsfMatrix ssf_after = ssf(after);

    TransformCheck check;
    check.name = synth::describe(transform);
    check.kind = classify(transform);
    switch (check.kind) {
        case InvarianceKind::exact:
        case InvarianceKind::reflection: check.tolerance = tol.exact; break;
        case InvarianceKind::scale: check.tolerance = tol.scale; break;
        case InvarianceKind::rotation: check.tolerance = tol.rotation; break;
    }

    for (int n = 1; n <= mask.categories(); ++n) {
        const HuVector ref = hu_invariants(before, n);
        const HuVector got = hu_invariants(after, n);
        const std::size_t area = before.category(n).pixel_count();
        check.max_ssf_delta = std::max(check.max_ssf_delta,
                                       std::abs(ssf_before.row(n)[0] - ssf_after.row(n)[0]));

        std::size_t last = 7;
        double floor = 0.0;
        if (check.kind == InvarianceKind::scale) {
            if (area < tol.scale_min_area) continue;
            floor = tol.scale_floor;
        } else if (check.kind == InvarianceKind::rotation) {
            if (area < tol.rotation_min_area) continue;
            floor = tol.rotation_floor;
            last = 4;
        }
        for (std::size_t k = 0; k < last; ++k) {
            if (floor > 0.0 && std::abs(ref.raw[k]) < floor) continue;
            double expected = ref.rescaled[k];
            if (check.kind == InvarianceKind::reflection && k == 6) expected = -expected;
            check.max_delta = std::max(check.max_delta, std::abs(got.rescaled[k] - expected));
            ++check.compared;
        }
        if (check.kind == InvarianceKind::reflection && std::abs(ref.raw[6]) >= 1e-12) {
            ++check.sign_checks;
            if (std::signbit(ref.rescaled[6]) != std::signbit(got.rescaled[6])) ++check.sign_flips;
        }
    }
    check.passed = check.max_delta <= check.tolerance && check.sign_flips == check.sign_checks;
    return check;
}

SegmentationMask pad_for_battery(const SegmentationMask& mask) {
    const int side = static_cast<int>(std::ceil(std::hypot(mask.width(), mask.height()))) + 8;
    if (side > kMaxMaskDimension) {
        throw ConfigError(fmt::format("padded frame {}x{} exceeds the supported maximum {}", side, side,
                                      kMaxMaskDimension));
    }
    const int ox = (side - mask.width()) / 2;
    const int oy = (side - mask.height()) / 2;
    std::vector<CategoryIndex> px(static_cast<std::size_t>(side) * side, 0);
    for (int r = 0; r < mask.height(); ++r)
        for (int c = 0; c < mask.width(); ++c)
            px[static_cast<std::size_t>(r + oy) * side + (c + ox)] = mask.at(r, c);
    return SegmentationMask(side, side, mask.categories(), std::move(px));
}

std::vector<synth::MaskTransform> default_battery(const SegmentationMask& mask, int scale, double angle) {
    // Largest shift that keeps every labeled pixel inside the frame, capped at 3.
    int top = mask.height(), bottom = -1, left = mask.width(), right = -1;
    for (int r = 0; r < mask.height(); ++r) {
        for (int c = 0; c < mask.width(); ++c) {
            if (mask.at(r, c) == 0) continue;
            top = std::min(top, r);
            bottom = std::max(bottom, r);
            left = std::min(left, c);
            right = std::max(right, c);
        }
    }
    const int dx = bottom < 0 ? 0 : std::min(3, mask.width() - 1 - right);
    const int dy = bottom < 0 ? 0 : std::min(2, mask.height() - 1 - bottom);
    return {
        synth::Translate{dx, dy},
        synth::Reflect{synth::Flip::left_right},
        synth::Reflect{synth::Flip::top_bottom},
        synth::Rotate90{1},
        synth::Rotate90{2},
        synth::Rotate90{3},
        synth::Scale{scale},
        synth::Rotate{angle},
    };
}

}  // namespace semfeat
