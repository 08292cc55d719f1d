#pragma once

#include <array>
#include <string>
#include <vector>

#include "semfeat/core.hpp"
#include "semfeat/synth.hpp"

namespace semfeat {

/// How a transform is expected to act on the rescaled Hu vector.
enum class InvarianceKind {
    exact,       ///< translation, 90-degree rotation: every h'_k unchanged
    reflection,  ///< h'1..h'6 unchanged, h'7 negated
    scale,       ///< pixel replication: |dh'_k| within the scale tolerance
    rotation,    ///< arbitrary angle: |dh'_k| for k = 1..4 within the rotation tolerance
};

struct InvarianceTolerances {
    double exact = 1e-9;
    double scale = 0.05;
    double rotation = 0.15;
    /// Discretized transforms only compare categories at least this large (pixels)...
    std::size_t scale_min_area = 100;
    std::size_t rotation_min_area = 400;
    /// ...and only invariants whose reference magnitude |h_k| reaches this floor.
    double scale_floor = 1e-30;
    double rotation_floor = 1e-3;
};

struct TransformCheck {
    std::string name;
    InvarianceKind kind = InvarianceKind::exact;
    double max_delta = 0;        ///< over compared (category, k)
    std::size_t compared = 0;    ///< number of (category, k) pairs compared
    double max_ssf_delta = 0;    ///< pixel-share column only; other columns move with the frame
    std::size_t sign_flips = 0;  ///< reflection: categories with |h7| >= 1e-12 whose h'7 changed sign
    std::size_t sign_checks = 0; ///< reflection: categories with |h7| >= 1e-12
    double tolerance = 0;
    bool passed = true;
};

InvarianceKind classify(const synth::MaskTransform& transform);

/// Recomputes SHMF+SSF of the transformed mask and compares it with `mask`.
/// Throws ClippingError when the transform leaves the frame.
TransformCheck check_transform(const SegmentationMask& mask, const synth::MaskTransform& transform,
                               const InvarianceTolerances& tol = {});

/// Centers `mask` in a square void frame large enough that any rotation about
/// the frame center, and the battery's small shift, keep every pixel inside.
/// Padding is an exact translation, so SHMF values are unchanged.
SegmentationMask pad_for_battery(const SegmentationMask& mask);

/// Translation, both reflections, three quarter turns, replication and an arbitrary rotation.
std::vector<synth::MaskTransform> default_battery(const SegmentationMask& mask, int scale = 4,
                                                  double angle = 0.5235987755982988);

}  // namespace semfeat
