#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace semfeat {

/// Category index stored in a mask pixel. 0 is void.
using CategoryIndex = std::uint16_t;

/// Largest mask side accepted. Raw third-order moments of a full mask stay
/// below 2^64 up to this size, which keeps the accumulator exact.
inline constexpr int kMaxMaskDimension = 8192;

/// Largest category count a mask can carry (16-bit PGM payload).
inline constexpr int kMaxSegCategories = 65535;

/**
 * Dense row-major grid of per-pixel segmentation-category indices.
 *
 * Pixel (row, col) is 0-based in memory. Moment sums use 1-based coordinates
 * i = row + 1 in [1, h] and j = col + 1 in [1, w].
 * Value 0 marks void pixels, which never contribute to any feature row.
 */
class SegmentationMask {
public:
    /// Validates dimensions and every pixel value against `categories`.
    SegmentationMask(int width, int height, int categories, std::vector<CategoryIndex> pixels);

    /// All-void mask.
    SegmentationMask(int width, int height, int categories);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    int categories() const noexcept { return categories_; }
    std::size_t size() const noexcept { return pixels_.size(); }

    CategoryIndex at(int row, int col) const { return pixels_[static_cast<std::size_t>(row) * width_ + col]; }
    std::span<const CategoryIndex> pixels() const noexcept { return pixels_; }
    std::span<const CategoryIndex> row(int r) const {
        return std::span<const CategoryIndex>(pixels_).subspan(static_cast<std::size_t>(r) * width_, width_);
    }

    /// Number of pixels with value 0.
    std::size_t void_count() const noexcept;

    /// Same pixels re-validated against a different category count.
    SegmentationMask with_categories(int categories) const;

    bool operator==(const SegmentationMask&) const = default;

private:
    int width_;
    int height_;
    int categories_;
    std::vector<CategoryIndex> pixels_;
};

/// Returns `mask` re-validated against `categories`; throws ValidationError naming
/// the first offending (row, col) and value.
SegmentationMask validate_mask(const SegmentationMask& mask, int categories);

/// Axis-aligned box in continuous pixel coordinates; pixel (row, col) covers
/// [col, col+1) x [row, row+1).
struct BoundingBox {
    double x_min = 0;
    double y_min = 0;
    double x_max = 0;
    double y_max = 0;

    double center_x() const noexcept { return 0.5 * (x_min + x_max); }
    double center_y() const noexcept { return 0.5 * (y_min + y_max); }
    bool operator==(const BoundingBox&) const = default;
};

struct Detection {
    int category = 0;  ///< object category in [1, N]
    BoundingBox box;
    double confidence = 1.0;
    bool operator==(const Detection&) const = default;
};

/// Detections of one image, validated against the image frame and vocabulary size.
class DetectionSet {
public:
    DetectionSet(int image_width, int image_height, int categories, std::vector<Detection> detections = {});

    int image_width() const noexcept { return image_width_; }
    int image_height() const noexcept { return image_height_; }
    int categories() const noexcept { return categories_; }
    std::span<const Detection> detections() const noexcept { return detections_; }
    std::size_t size() const noexcept { return detections_.size(); }
    bool empty() const noexcept { return detections_.empty(); }

    bool operator==(const DetectionSet&) const = default;

private:
    int image_width_;
    int image_height_;
    int categories_;
    std::vector<Detection> detections_;
};

/// Category names for both vocabularies; index k maps to names[k - 1].
class LabelMap {
public:
    LabelMap() = default;
    LabelMap(std::vector<std::string> seg_names, std::vector<std::string> obj_names);

    int seg_categories() const noexcept { return static_cast<int>(seg_names_.size()); }
    int obj_categories() const noexcept { return static_cast<int>(obj_names_.size()); }
    const std::vector<std::string>& seg_names() const noexcept { return seg_names_; }
    const std::vector<std::string>& obj_names() const noexcept { return obj_names_; }

    std::optional<int> seg_index(std::string_view name) const;
    std::optional<int> obj_index(std::string_view name) const;

private:
    std::vector<std::string> seg_names_;
    std::vector<std::string> obj_names_;
};

/// Per-category feature rows with a fixed column count; row n is category n (1-based).
template <std::size_t Cols>
class FeatureRows {
public:
    using Row = std::array<double, Cols>;
    static constexpr std::size_t kCols = Cols;

    FeatureRows() = default;
    explicit FeatureRows(int categories) : rows_(static_cast<std::size_t>(categories), Row{}) {}

    int categories() const noexcept { return static_cast<int>(rows_.size()); }
    const Row& row(int category) const { return rows_.at(static_cast<std::size_t>(category - 1)); }
    Row& row(int category) { return rows_.at(static_cast<std::size_t>(category - 1)); }
    const std::vector<Row>& rows() const noexcept { return rows_; }

    bool operator==(const FeatureRows&) const = default;

private:
    std::vector<Row> rows_;
};

/// L x 7 log-rescaled Hu moments, one row per segmentation-category.
using ShmfMatrix = FeatureRows<7>;
/// L x 5 rows of (pixel share, mean x, mean y, spread x, spread y).
using SsfMatrix = FeatureRows<5>;

/// Per-object-category occurrence counts O_1..O_N.
class Sfv {
public:
    Sfv() = default;
    explicit Sfv(int categories) : counts_(static_cast<std::size_t>(categories), 0) {}

    int categories() const noexcept { return static_cast<int>(counts_.size()); }
    std::uint32_t count(int category) const { return counts_.at(static_cast<std::size_t>(category - 1)); }
    std::uint32_t& count(int category) { return counts_.at(static_cast<std::size_t>(category - 1)); }
    const std::vector<std::uint32_t>& counts() const noexcept { return counts_; }
    std::uint64_t total() const noexcept;

    bool operator==(const Sfv&) const = default;

private:
    std::vector<std::uint32_t> counts_;
};

/// N x N x K inter-object distance-bin counts; indices are 1-based, storage is (i, j, k) lexicographic.
class Sfm {
public:
    Sfm() = default;
    Sfm(int categories, int bins)
        : categories_(categories), bins_(bins),
          values_(static_cast<std::size_t>(categories) * categories * bins, 0) {}

    int categories() const noexcept { return categories_; }
    int bins() const noexcept { return bins_; }
    std::uint32_t at(int i, int j, int k) const { return values_.at(offset(i, j, k)); }
    std::uint32_t& at(int i, int j, int k) { return values_.at(offset(i, j, k)); }
    const std::vector<std::uint32_t>& values() const noexcept { return values_; }
    bool all_zero() const noexcept;

    bool operator==(const Sfm&) const = default;

private:
    std::size_t offset(int i, int j, int k) const {
        return (static_cast<std::size_t>(i - 1) * categories_ + static_cast<std::size_t>(j - 1)) * bins_ +
               static_cast<std::size_t>(k - 1);
    }

    int categories_ = 0;
    int bins_ = 0;
    std::vector<std::uint32_t> values_;
};

/// Dataset-wide feature dimensions. `global_dim` is 0 when no external embedding is used.
struct FeatureShape {
    int seg_categories = 0;  ///< L
    int obj_categories = 0;  ///< N
    int bins = 0;            ///< K
    int global_dim = 0;      ///< G

    std::size_t shmf_size() const noexcept { return 7u * static_cast<std::size_t>(seg_categories); }
    std::size_t ssf_size() const noexcept { return 5u * static_cast<std::size_t>(seg_categories); }
    std::size_t sfv_size() const noexcept { return static_cast<std::size_t>(obj_categories); }
    std::size_t sfm_size() const noexcept {
        return static_cast<std::size_t>(obj_categories) * obj_categories * bins;
    }
    std::size_t flattened_size() const noexcept {
        return shmf_size() + ssf_size() + sfv_size() + sfm_size() + static_cast<std::size_t>(global_dim);
    }

    bool operator==(const FeatureShape&) const = default;
};

/// Fused per-image feature set. Flattening order: SHMF row-major, SSF row-major,
/// SFV, SFM in (i, j, k) order, then the global vector.
struct FeatureBundle {
    ShmfMatrix shmf;
    SsfMatrix ssf;
    Sfv sfv;
    Sfm sfm;
    std::optional<std::vector<double>> global;

    FeatureShape shape() const noexcept;
    std::vector<double> flatten() const;
    static FeatureBundle unflatten(const FeatureShape& shape, std::span<const double> values);

    bool operator==(const FeatureBundle&) const = default;
};

}  // namespace semfeat
