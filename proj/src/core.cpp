#include "semfeat/core.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include <fmt/format.h>

#include "semfeat/error.hpp"

namespace semfeat {

namespace {

void check_dimensions(int width, int height) {
    if (width < 1 || height < 1) {
        throw ValidationError(fmt::format("mask dimensions must be positive, got {}x{}", width, height));
    }
    if (width > kMaxMaskDimension || height > kMaxMaskDimension) {
        throw ValidationError(
            fmt::format("mask dimensions {}x{} exceed the supported maximum {}", width, height, kMaxMaskDimension));
    }
}

void check_category_count(int categories) {
    if (categories < 0 || categories > kMaxSegCategories) {
        throw ConfigError(fmt::format("segmentation category count {} outside [0, {}]", categories, kMaxSegCategories));
    }
}

void check_pixels(int width, int categories, std::span<const CategoryIndex> pixels) {
    const auto limit = static_cast<CategoryIndex>(categories);
    const auto bad = std::find_if(pixels.begin(), pixels.end(), [limit](CategoryIndex v) { return v > limit; });
    if (bad != pixels.end()) {
        const auto offset = static_cast<std::size_t>(bad - pixels.begin());
        throw ValidationError(fmt::format("mask value {} at (row {}, col {}) exceeds category count {}", *bad,
                                          offset / width, offset % width, categories));
    }
}

}  // namespace

SegmentationMask::SegmentationMask(int width, int height, int categories, std::vector<CategoryIndex> pixels)
    : width_(width), height_(height), categories_(categories), pixels_(std::move(pixels)) {
    check_dimensions(width, height);
    check_category_count(categories);
    if (pixels_.size() != static_cast<std::size_t>(width) * height) {
        throw ValidationError(fmt::format("mask payload has {} pixels, expected {}x{} = {}", pixels_.size(), width,
                                          height, static_cast<std::size_t>(width) * height));
    }
    check_pixels(width, categories, pixels_);
}

SegmentationMask::SegmentationMask(int width, int height, int categories)
    : SegmentationMask(width, height, categories,
                       std::vector<CategoryIndex>(static_cast<std::size_t>(std::max(width, 0)) * std::max(height, 0),
                                                  0)) {}

std::size_t SegmentationMask::void_count() const noexcept {
    return static_cast<std::size_t>(std::count(pixels_.begin(), pixels_.end(), CategoryIndex{0}));
}

SegmentationMask SegmentationMask::with_categories(int categories) const {
    return SegmentationMask(width_, height_, categories, pixels_);
}

SegmentationMask validate_mask(const SegmentationMask& mask, int categories) {
    check_category_count(categories);
    check_pixels(mask.width(), categories, mask.pixels());
    if (categories == mask.categories()) return mask;
    return mask.with_categories(categories);
}

DetectionSet::DetectionSet(int image_width, int image_height, int categories, std::vector<Detection> detections)
    : image_width_(image_width), image_height_(image_height), categories_(categories),
      detections_(std::move(detections)) {
    if (image_width < 1 || image_height < 1) {
        throw ValidationError(fmt::format("image dimensions must be positive, got {}x{}", image_width, image_height));
    }
    if (categories < 0) throw ConfigError(fmt::format("object category count {} is negative", categories));
    for (std::size_t idx = 0; idx < detections_.size(); ++idx) {
        const Detection& d = detections_[idx];
        if (d.category < 1 || d.category > categories) {
            throw ValidationError(
                fmt::format("detection {}: category {} outside [1, {}]", idx, d.category, categories));
        }
        const BoundingBox& b = d.box;
        if (!(b.x_min <= b.x_max) || !(b.y_min <= b.y_max)) {
            throw ValidationError(fmt::format("detection {}: inverted box ({}, {}, {}, {})", idx, b.x_min, b.y_min,
                                              b.x_max, b.y_max));
        }
        if (b.x_min < 0 || b.y_min < 0 || b.x_max > image_width || b.y_max > image_height) {
            throw ValidationError(fmt::format("detection {}: box ({}, {}, {}, {}) outside {}x{} frame", idx, b.x_min,
                                              b.y_min, b.x_max, b.y_max, image_width, image_height));
        }
        if (!(d.confidence >= 0.0 && d.confidence <= 1.0)) {
            throw ValidationError(fmt::format("detection {}: confidence {} outside [0, 1]", idx, d.confidence));
        }
    }
}

namespace {

std::vector<std::string> checked_unique(std::vector<std::string> names, const char* vocabulary) {
    std::set<std::string_view> seen;
    for (const auto& n : names) {
        if (n.empty()) throw ValidationError(fmt::format("{} vocabulary contains an empty name", vocabulary));
        if (!seen.insert(n).second) {
            throw ValidationError(fmt::format("{} vocabulary repeats the name '{}'", vocabulary, n));
        }
    }
    return names;
}

std::optional<int> find_index(const std::vector<std::string>& names, std::string_view name) {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) return std::nullopt;
    return static_cast<int>(it - names.begin()) + 1;
}

}  // namespace

LabelMap::LabelMap(std::vector<std::string> seg_names, std::vector<std::string> obj_names)
    : seg_names_(checked_unique(std::move(seg_names), "segmentation")),
      obj_names_(checked_unique(std::move(obj_names), "object")) {}

std::optional<int> LabelMap::seg_index(std::string_view name) const { return find_index(seg_names_, name); }
std::optional<int> LabelMap::obj_index(std::string_view name) const { return find_index(obj_names_, name); }

std::uint64_t Sfv::total() const noexcept {
    return std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0});
}

bool Sfm::all_zero() const noexcept {
    return std::all_of(values_.begin(), values_.end(), [](std::uint32_t v) { return v == 0; });
}

FeatureShape FeatureBundle::shape() const noexcept {
    return FeatureShape{shmf.categories(), sfv.categories(), sfm.bins(),
                        global ? static_cast<int>(global->size()) : 0};
}

std::vector<double> FeatureBundle::flatten() const {
    std::vector<double> out;
    out.reserve(shape().flattened_size());
    for (const auto& r : shmf.rows()) out.insert(out.end(), r.begin(), r.end());
    for (const auto& r : ssf.rows()) out.insert(out.end(), r.begin(), r.end());
    for (auto c : sfv.counts()) out.push_back(static_cast<double>(c));
    for (auto b : sfm.values()) out.push_back(static_cast<double>(b));
    if (global) out.insert(out.end(), global->begin(), global->end());
    return out;
}

FeatureBundle FeatureBundle::unflatten(const FeatureShape& shape, std::span<const double> values) {
    if (values.size() != shape.flattened_size()) {
        throw ConfigError(fmt::format("flattened bundle has {} values, shape requires {}", values.size(),
                                      shape.flattened_size()));
    }
    const auto to_count = [](double v, const char* block) {
        if (!(v >= 0.0) || v != static_cast<double>(static_cast<std::uint32_t>(v))) {
            throw ConfigError(fmt::format("block {} holds non-count value {}", block, v));
        }
        return static_cast<std::uint32_t>(v);
    };

    FeatureBundle b;
    b.shmf = ShmfMatrix(shape.seg_categories);
    b.ssf = SsfMatrix(shape.seg_categories);
    b.sfv = Sfv(shape.obj_categories);
    b.sfm = Sfm(shape.obj_categories, shape.bins);

    std::size_t pos = 0;
    for (int n = 1; n <= shape.seg_categories; ++n)
        for (auto& v : b.shmf.row(n)) v = values[pos++];
    for (int n = 1; n <= shape.seg_categories; ++n)
        for (auto& v : b.ssf.row(n)) v = values[pos++];
    for (int i = 1; i <= shape.obj_categories; ++i) b.sfv.count(i) = to_count(values[pos++], "sfv");
    for (int i = 1; i <= shape.obj_categories; ++i)
        for (int j = 1; j <= shape.obj_categories; ++j)
            for (int k = 1; k <= shape.bins; ++k) b.sfm.at(i, j, k) = to_count(values[pos++], "sfm");
    if (shape.global_dim > 0) b.global.emplace(values.begin() + static_cast<std::ptrdiff_t>(pos), values.end());
    return b;
}

}  // namespace semfeat
