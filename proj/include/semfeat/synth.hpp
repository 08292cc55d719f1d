#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "semfeat/core.hpp"
#include "semfeat/rng.hpp"

namespace semfeat::synth {

enum class ShapeFamily : std::uint8_t { rectangle, ellipse, triangle };

/// A filled shape in continuous pixel coordinates (x right, y down).
/// Triangles are isosceles with the apex at local (0, -half_height).
struct Shape {
    ShapeFamily family = ShapeFamily::rectangle;
    double center_x = 0;
    double center_y = 0;
    double half_width = 0;
    double half_height = 0;
    double angle = 0;  ///< radians, rotates local axes clockwise on screen

    bool contains(double x, double y) const;
};

/// Paints every pixel whose center lies inside `shape`. Returns the number of
/// pixels painted and, when any were, their tight box.
struct RasterResult {
    std::size_t pixels = 0;
    BoundingBox box;
};
RasterResult rasterize(const Shape& shape, CategoryIndex category, int width, int height,
                       std::vector<CategoryIndex>& pixels);

/// Mask with the shapes painted in order (later shapes overwrite earlier ones).
SegmentationMask render(int width, int height, int categories,
                        const std::vector<std::pair<Shape, CategoryIndex>>& shapes);

struct Range {
    double min = 0;
    double max = 0;
};

/// Axis-aligned region of the unit square.
struct Region {
    double x0 = 0;
    double y0 = 0;
    double x1 = 1;
    double y1 = 1;
};

/// How one segmentation-category appears in a scene class.
struct ShapeRule {
    int seg_category = 1;
    double presence = 1.0;  ///< probability the rule fires at all
    int count_min = 1;
    int count_max = 1;
    ShapeFamily family = ShapeFamily::rectangle;
    Range width{0.1, 0.2};   ///< shape width as a fraction of the image width
    Range height{0.1, 0.2};  ///< shape height as a fraction of the image height
    Region region;           ///< where shape centers are placed
    Range angle{0, 0};       ///< radians
    int obj_category = 0;    ///< detection category emitted per rendered shape; 0 = none
    double emit_probability = 1.0;
    Range confidence{0.05, 1.0};
};

struct SceneTemplate {
    int label = 0;
    std::string name;
    std::vector<ShapeRule> rules;  ///< rendered in order
};

struct SceneConfig {
    int width = 96;
    int height = 96;
    int seg_categories = 8;
    int obj_categories = 5;
};

/// Provenance of one emitted detection.
struct DetectionSource {
    int seg_category = 0;
    bool occluded = false;  ///< no pixel of the emitting shape survived later shapes
};

struct SceneSample {
    SegmentationMask mask;
    DetectionSet detections;
    int label = 0;
    std::vector<DetectionSource> sources;  ///< parallel to detections
};

/// Throws ConfigError when the template is inconsistent with `config`.
void validate_template(const SceneTemplate& scene, const SceneConfig& config);

/// Deterministic in (template, config, seed). Detections are the tight boxes of
/// the rendered shapes before occlusion by later shapes.
SceneSample generate_scene(const SceneTemplate& scene, const SceneConfig& config, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Mask transforms

struct Translate {
    int dx = 0;
    int dy = 0;
};
/// k quarter turns clockwise on screen; width and height swap for odd k.
struct Rotate90 {
    int k = 1;
};
/// Rotation about the frame center with nearest-neighbor resampling; frame size is kept.
struct Rotate {
    double radians = 0;
};
/// Pixel replication by an integer factor; the frame grows by the same factor.
struct Scale {
    int factor = 2;
};
enum class Flip : std::uint8_t { left_right, top_bottom };
struct Reflect {
    Flip axis = Flip::left_right;
};

using MaskTransform = std::variant<Translate, Rotate90, Rotate, Scale, Reflect>;

std::string describe(const MaskTransform& transform);

/// Throws ClippingError if any labeled pixel would leave the frame.
SegmentationMask transform_mask(const SegmentationMask& mask, const MaskTransform& transform);

// ---------------------------------------------------------------------------
// Datasets

struct DatasetConfig {
    SceneConfig scene;
    LabelMap labels;
    std::vector<SceneTemplate> templates;
    int train_samples = 600;
    int test_samples = 200;
    std::uint64_t seed = 7;
};

/// The six-class benchmark. Class pairs share either their segmentation layout
/// or their object profile, so each feature group alone leaves some classes ambiguous.
DatasetConfig default_dataset_config();

struct ManifestEntry {
    std::string id;
    std::string split;  ///< "train" or "test"
    int label = 0;
    std::uint64_t seed = 0;
    std::string mask_path;        ///< relative to the manifest directory
    std::string detections_path;  ///< relative to the manifest directory
    std::vector<int> occluded;    ///< indices of detections whose shape was fully occluded

    bool operator==(const ManifestEntry&) const = default;
};

inline constexpr std::string_view kManifestSchema = "semfeat.manifest/1";

/// Tab-separated manifest: two '#' header lines (schema, config echo), a column
/// header, then one row per sample with columns
/// id, split, class, seed, mask, detections, occluded ('-' when none).
std::string encode_manifest(const std::vector<ManifestEntry>& entries,
                            const std::vector<std::pair<std::string, std::string>>& config);
std::vector<ManifestEntry> parse_manifest(std::string_view text, const std::string& origin = "<memory>");
std::vector<ManifestEntry> read_manifest(const std::filesystem::path& path);

/// Sample `index` of the dataset: class index % templates, derived seed.
ManifestEntry plan_sample(const DatasetConfig& config, int index);

/// Writes masks/, detections/, labels.json and manifest.tsv under `out_dir`.
/// Samples are generated independently on `threads` workers; files do not depend on the thread count.
std::vector<ManifestEntry> generate_dataset(const DatasetConfig& config, const std::filesystem::path& out_dir,
                                            int threads = 1);

}  // namespace semfeat::synth
