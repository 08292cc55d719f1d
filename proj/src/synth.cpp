#include "semfeat/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include <fmt/format.h>

#include "semfeat/error.hpp"
#include "semfeat/io.hpp"
#include "semfeat/parallel.hpp"

namespace semfeat::synth {

namespace fs = std::filesystem;

// ---------------------------------------------------------------------------
// Shapes

bool Shape::contains(double x, double y) const {
    const double dx = x - center_x;
    const double dy = y - center_y;
    const double cs = std::cos(angle);
    const double sn = std::sin(angle);
    const double lx = cs * dx + sn * dy;
    const double ly = -sn * dx + cs * dy;
    switch (family) {
        case ShapeFamily::rectangle:
            return std::fabs(lx) <= half_width && std::fabs(ly) <= half_height;
        case ShapeFamily::ellipse: {
            if (half_width <= 0 || half_height <= 0) return false;
            const double u = lx / half_width;
            const double v = ly / half_height;
            return u * u + v * v <= 1.0;
        }
        case ShapeFamily::triangle: {
            if (half_height <= 0 || ly > half_height || ly < -half_height) return false;
            return std::fabs(lx) <= half_width * (ly + half_height) / (2.0 * half_height);
        }
    }
    return false;
}

namespace {

// Calls paint(row, col) for every pixel whose center lies inside the shape and
// returns the tight box of those pixels.
template <typename Paint>
RasterResult cover(const Shape& shape, int width, int height, Paint&& paint) {
    const double reach = std::hypot(shape.half_width, shape.half_height) + 1.0;
    const int r0 = std::max(0, static_cast<int>(std::floor(shape.center_y - reach)));
    const int r1 = std::min(height - 1, static_cast<int>(std::ceil(shape.center_y + reach)));
    const int c0 = std::max(0, static_cast<int>(std::floor(shape.center_x - reach)));
    const int c1 = std::min(width - 1, static_cast<int>(std::ceil(shape.center_x + reach)));

    RasterResult out;
    int min_r = height, max_r = -1, min_c = width, max_c = -1;
    for (int r = r0; r <= r1; ++r) {
        for (int c = c0; c <= c1; ++c) {
            if (!shape.contains(c + 0.5, r + 0.5)) continue;
            paint(r, c);
            ++out.pixels;
            min_r = std::min(min_r, r);
            max_r = std::max(max_r, r);
            min_c = std::min(min_c, c);
            max_c = std::max(max_c, c);
        }
    }
    if (out.pixels) out.box = BoundingBox{double(min_c), double(min_r), double(max_c + 1), double(max_r + 1)};
    return out;
}

}  // namespace

RasterResult rasterize(const Shape& shape, CategoryIndex category, int width, int height,
                       std::vector<CategoryIndex>& pixels) {
    return cover(shape, width, height,
                 [&](int r, int c) { pixels[static_cast<std::size_t>(r) * width + c] = category; });
}

SegmentationMask render(int width, int height, int categories,
                        const std::vector<std::pair<Shape, CategoryIndex>>& shapes) {
    std::vector<CategoryIndex> pixels(static_cast<std::size_t>(width) * height, 0);
    for (const auto& [shape, category] : shapes) rasterize(shape, category, width, height, pixels);
    return SegmentationMask(width, height, categories, std::move(pixels));
}

// ---------------------------------------------------------------------------
// Scenes

void validate_template(const SceneTemplate& scene, const SceneConfig& config) {
    const auto bad = [&](std::size_t rule, const std::string& what) {
        return ConfigError(fmt::format("template '{}' rule {}: {}", scene.name, rule, what));
    };
    for (std::size_t idx = 0; idx < scene.rules.size(); ++idx) {
        const ShapeRule& r = scene.rules[idx];
        if (r.seg_category < 1 || r.seg_category > config.seg_categories) {
            throw bad(idx, fmt::format("segmentation category {} outside [1, {}]", r.seg_category,
                                       config.seg_categories));
        }
        if (r.obj_category < 0 || r.obj_category > config.obj_categories) {
            throw bad(idx, fmt::format("object category {} outside [0, {}]", r.obj_category, config.obj_categories));
        }
        const auto probability = [](double p) { return p >= 0.0 && p <= 1.0; };
        if (!probability(r.presence) || !probability(r.emit_probability)) throw bad(idx, "probability outside [0, 1]");
        if (r.count_min < 0 || r.count_max < r.count_min) throw bad(idx, "invalid count range");
        const auto fraction = [](const Range& s) { return s.min > 0.0 && s.min <= s.max && s.max <= 1.0; };
        if (!fraction(r.width) || !fraction(r.height)) throw bad(idx, "size fractions must lie in (0, 1]");
        const Region& g = r.region;
        if (!(0.0 <= g.x0 && g.x0 <= g.x1 && g.x1 <= 1.0 && 0.0 <= g.y0 && g.y0 <= g.y1 && g.y1 <= 1.0)) {
            throw bad(idx, "placement region must lie within the unit square");
        }
        if (!(r.confidence.min >= 0.0 && r.confidence.min <= r.confidence.max && r.confidence.max <= 1.0)) {
            throw bad(idx, "confidence range outside [0, 1]");
        }
    }
}

SceneSample generate_scene(const SceneTemplate& scene, const SceneConfig& config, std::uint64_t seed) {
    validate_template(scene, config);
    Rng rng(seed);
    const int w = config.width;
    const int h = config.height;
    std::vector<CategoryIndex> pixels(static_cast<std::size_t>(w) * h, 0);
    std::vector<int> owner(pixels.size(), -1);

    struct Emitted {
        Detection detection;
        int seg_category;
        int shape_id;
    };
    std::vector<Emitted> emitted;
    int shape_id = 0;

    for (const ShapeRule& rule : scene.rules) {
        if (!rng.bernoulli(rule.presence)) continue;
        const auto count = rng.uniform_int(rule.count_min, rule.count_max);
        for (std::int64_t n = 0; n < count; ++n) {
            Shape shape;
            shape.family = rule.family;
            shape.half_width = 0.5 * w * rng.uniform(rule.width.min, rule.width.max);
            shape.half_height = 0.5 * h * rng.uniform(rule.height.min, rule.height.max);
            shape.center_x = w * rng.uniform(rule.region.x0, rule.region.x1);
            shape.center_y = h * rng.uniform(rule.region.y0, rule.region.y1);
            shape.angle = rng.uniform(rule.angle.min, rule.angle.max);
            const bool emit = rng.bernoulli(rule.emit_probability);
            const double confidence = rng.uniform(rule.confidence.min, rule.confidence.max);

            const auto category = static_cast<CategoryIndex>(rule.seg_category);
            const RasterResult raster = cover(shape, w, h, [&](int r, int c) {
                const std::size_t k = static_cast<std::size_t>(r) * w + c;
                pixels[k] = category;
                owner[k] = shape_id;
            });
            if (raster.pixels > 0 && rule.obj_category > 0 && emit) {
                emitted.push_back({Detection{rule.obj_category, raster.box, confidence}, rule.seg_category, shape_id});
            }
            ++shape_id;
        }
    }

    std::vector<std::size_t> surviving(static_cast<std::size_t>(shape_id), 0);
    for (int o : owner)
        if (o >= 0) ++surviving[static_cast<std::size_t>(o)];

    std::vector<Detection> detections;
    std::vector<DetectionSource> sources;
    for (const Emitted& e : emitted) {
        detections.push_back(e.detection);
        sources.push_back({e.seg_category, surviving[static_cast<std::size_t>(e.shape_id)] == 0});
    }
    return SceneSample{SegmentationMask(w, h, config.seg_categories, std::move(pixels)),
                       DetectionSet(w, h, config.obj_categories, std::move(detections)), scene.label,
                       std::move(sources)};
}

// ---------------------------------------------------------------------------
// Transforms

namespace {

SegmentationMask translate(const SegmentationMask& mask, const Translate& t) {
    const int w = mask.width();
    const int h = mask.height();
    std::vector<CategoryIndex> out(mask.size(), 0);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const CategoryIndex v = mask.at(r, c);
            if (!v) continue;
            const int nr = r + t.dy;
            const int nc = c + t.dx;
            if (nr < 0 || nr >= h || nc < 0 || nc >= w) {
                throw ClippingError(fmt::format("translate({}, {}) moves pixel (row {}, col {}) out of the {}x{} frame",
                                                t.dx, t.dy, r, c, w, h));
            }
            out[static_cast<std::size_t>(nr) * w + nc] = v;
        }
    }
    return SegmentationMask(w, h, mask.categories(), std::move(out));
}

SegmentationMask quarter_turn(const SegmentationMask& mask) {
    const int w = mask.width();
    const int h = mask.height();
    // new frame is h wide and w tall; source (r, c) lands at (c, h - 1 - r)
    std::vector<CategoryIndex> out(mask.size(), 0);
    for (int r = 0; r < h; ++r)
        for (int c = 0; c < w; ++c) out[static_cast<std::size_t>(c) * h + (h - 1 - r)] = mask.at(r, c);
    return SegmentationMask(h, w, mask.categories(), std::move(out));
}

SegmentationMask rotate(const SegmentationMask& mask, const Rotate& t) {
    const int w = mask.width();
    const int h = mask.height();
    const double cx = 0.5 * w;
    const double cy = 0.5 * h;
    const double cs = std::cos(t.radians);
    const double sn = std::sin(t.radians);

    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            if (!mask.at(r, c)) continue;
            const double dx = c + 0.5 - cx;
            const double dy = r + 0.5 - cy;
            const double x = cx + cs * dx - sn * dy;
            const double y = cy + sn * dx + cs * dy;
            if (x < 0 || x >= w || y < 0 || y >= h) {
                throw ClippingError(fmt::format("rotate({}) moves pixel (row {}, col {}) out of the {}x{} frame",
                                                t.radians, r, c, w, h));
            }
        }
    }

    std::vector<CategoryIndex> out(mask.size(), 0);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const double dx = c + 0.5 - cx;
            const double dy = r + 0.5 - cy;
            const double sx = cx + cs * dx + sn * dy;
            const double sy = cy - sn * dx + cs * dy;
            const int sc = static_cast<int>(std::floor(sx));
            const int sr = static_cast<int>(std::floor(sy));
            if (sc < 0 || sc >= w || sr < 0 || sr >= h) continue;
            out[static_cast<std::size_t>(r) * w + c] = mask.at(sr, sc);
        }
    }
    return SegmentationMask(w, h, mask.categories(), std::move(out));
}

SegmentationMask scale(const SegmentationMask& mask, const Scale& t) {
    if (t.factor < 1) throw ConfigError(fmt::format("scale factor must be a positive integer, got {}", t.factor));
    const long nw = static_cast<long>(mask.width()) * t.factor;
    const long nh = static_cast<long>(mask.height()) * t.factor;
    if (nw > kMaxMaskDimension || nh > kMaxMaskDimension) {
        throw ConfigError(fmt::format("scaled mask {}x{} exceeds the supported maximum {}", nw, nh, kMaxMaskDimension));
    }
    std::vector<CategoryIndex> out(static_cast<std::size_t>(nw * nh));
    for (long r = 0; r < nh; ++r)
        for (long c = 0; c < nw; ++c)
            out[static_cast<std::size_t>(r * nw + c)] =
                mask.at(static_cast<int>(r / t.factor), static_cast<int>(c / t.factor));
    return SegmentationMask(static_cast<int>(nw), static_cast<int>(nh), mask.categories(), std::move(out));
}

SegmentationMask reflect(const SegmentationMask& mask, const Reflect& t) {
    const int w = mask.width();
    const int h = mask.height();
    std::vector<CategoryIndex> out(mask.size());
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const int sr = t.axis == Flip::top_bottom ? h - 1 - r : r;
            const int sc = t.axis == Flip::left_right ? w - 1 - c : c;
            out[static_cast<std::size_t>(r) * w + c] = mask.at(sr, sc);
        }
    }
    return SegmentationMask(w, h, mask.categories(), std::move(out));
}

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string describe(const MaskTransform& transform) {
    return std::visit(
        Overloaded{[](const Translate& t) { return fmt::format("translate({},{})", t.dx, t.dy); },
                   [](const Rotate90& t) { return fmt::format("rotate90({})", t.k); },
                   [](const Rotate& t) { return fmt::format("rotate({:.4f}rad)", t.radians); },
                   [](const Scale& t) { return fmt::format("scale({})", t.factor); },
                   [](const Reflect& t) {
                       return std::string(t.axis == Flip::left_right ? "reflect(left_right)" : "reflect(top_bottom)");
                   }},
        transform);
}

SegmentationMask transform_mask(const SegmentationMask& mask, const MaskTransform& transform) {
    return std::visit(Overloaded{[&](const Translate& t) { return translate(mask, t); },
                                 [&](const Rotate90& t) {
                                     SegmentationMask out = mask;
                                     for (int k = ((t.k % 4) + 4) % 4; k > 0; --k) out = quarter_turn(out);
                                     return out;
                                 },
                                 [&](const Rotate& t) { return rotate(mask, t); },
                                 [&](const Scale& t) { return scale(mask, t); },
                                 [&](const Reflect& t) { return reflect(mask, t); }},
                      transform);
}

// ---------------------------------------------------------------------------
// Default benchmark

namespace {

constexpr int kFloor = 1, kWall = 2, kBed = 3, kTable = 4, kCabinet = 5, kChair = 6, kScreen = 7, kShelf = 8;
constexpr int kObjChair = 1, kObjTv = 2, kObjLaptop = 3, kObjBook = 4, kObjDiningTable = 5;

std::vector<ShapeRule> background() {
    ShapeRule wall;
    wall.seg_category = kWall;
    wall.width = {1.0, 1.0};
    wall.height = {0.35, 0.5};
    wall.region = {0.5, 0.12, 0.5, 0.22};

    ShapeRule floor;
    floor.seg_category = kFloor;
    floor.width = {1.0, 1.0};
    floor.height = {0.25, 0.4};
    floor.region = {0.5, 0.82, 0.5, 0.92};
    return {wall, floor};
}

// Layouts: non-emitting shapes that only the segmentation features see.
enum class Layout { bed_ellipse, cabinet_rect, desk_rect, cabinet_triangle, table_and_cabinet };

std::vector<ShapeRule> layout(Layout kind) {
    ShapeRule bed;
    bed.seg_category = kBed;
    bed.width = {0.35, 0.5};
    bed.height = {0.2, 0.3};
    bed.region = {0.25, 0.6, 0.4, 0.72};

    ShapeRule cabinet;
    cabinet.seg_category = kCabinet;
    cabinet.width = {0.15, 0.22};
    cabinet.height = {0.35, 0.5};
    cabinet.region = {0.78, 0.45, 0.88, 0.6};

    switch (kind) {
        case Layout::bed_ellipse:
            bed.family = ShapeFamily::ellipse;
            return {bed};
        case Layout::desk_rect: {
            ShapeRule desk = bed;
            desk.seg_category = kTable;
            desk.height = {0.15, 0.22};
            return {desk};
        }
        case Layout::cabinet_rect:
            return {cabinet};
        case Layout::cabinet_triangle:
            cabinet.family = ShapeFamily::triangle;
            cabinet.width = {0.25, 0.35};
            cabinet.height = {0.3, 0.45};
            cabinet.region = {0.2, 0.45, 0.35, 0.6};
            return {cabinet};
        case Layout::table_and_cabinet: {
            ShapeRule table;
            table.seg_category = kTable;
            table.family = ShapeFamily::ellipse;
            table.width = {0.3, 0.45};
            table.height = {0.12, 0.2};
            table.region = {0.45, 0.65, 0.6, 0.75};
            return {table, cabinet};
        }
    }
    return {};
}

// Object profiles: shapes that emit detections, rendered after the layout.
enum class Profile { screen_tv, screen_laptop, shelves };

std::vector<ShapeRule> profile(Profile kind) {
    if (kind == Profile::shelves) {
        ShapeRule shelf;
        shelf.seg_category = kShelf;
        shelf.count_min = 1;
        shelf.count_max = 3;
        shelf.width = {0.1, 0.16};
        shelf.height = {0.25, 0.35};
        shelf.region = {0.1, 0.25, 0.9, 0.45};
        shelf.obj_category = kObjBook;

        ShapeRule table;
        table.seg_category = kTable;
        table.presence = 0.9;
        table.width = {0.3, 0.4};
        table.height = {0.1, 0.15};
        table.region = {0.4, 0.6, 0.6, 0.7};
        table.obj_category = kObjDiningTable;
        return {shelf, table};
    }
    ShapeRule screen;
    screen.seg_category = kScreen;
    screen.width = {0.12, 0.2};
    screen.height = {0.08, 0.14};
    screen.region = {0.35, 0.2, 0.65, 0.35};
    screen.obj_category = kind == Profile::screen_tv ? kObjTv : kObjLaptop;

    ShapeRule chair;
    chair.seg_category = kChair;
    chair.family = ShapeFamily::triangle;
    chair.count_min = 1;
    chair.count_max = 3;
    chair.width = {0.08, 0.12};
    chair.height = {0.12, 0.18};
    chair.region = {0.15, 0.6, 0.85, 0.85};
    chair.obj_category = kObjChair;
    return {screen, chair};
}

SceneTemplate compose(int label, std::string name, Layout l, Profile p) {
    SceneTemplate t{label, std::move(name), background()};
    for (auto& r : layout(l)) t.rules.push_back(r);
    for (auto& r : profile(p)) t.rules.push_back(r);
    return t;
}

}  // namespace

DatasetConfig default_dataset_config() {
    DatasetConfig cfg;
    cfg.scene = SceneConfig{96, 96, 8, 5};
    cfg.labels = LabelMap({"floor", "wall", "bed", "table", "cabinet", "chair", "screen", "shelf"},
                          {"chair", "tv", "laptop", "book", "dining_table"});
    // 0/1 share the layout (segmentation-ambiguous); {0,2}, {1,3}, {4,5} share
    // object profiles (object-ambiguous).
    cfg.templates = {
        compose(0, "living_room", Layout::bed_ellipse, Profile::screen_tv),
        compose(1, "home_office", Layout::bed_ellipse, Profile::screen_laptop),
        compose(2, "media_room", Layout::cabinet_rect, Profile::screen_tv),
        compose(3, "office", Layout::desk_rect, Profile::screen_laptop),
        compose(4, "library", Layout::cabinet_triangle, Profile::shelves),
        compose(5, "classroom", Layout::table_and_cabinet, Profile::shelves),
    };
    return cfg;
}

// ---------------------------------------------------------------------------
// Manifest

std::string encode_manifest(const std::vector<ManifestEntry>& entries,
                            const std::vector<std::pair<std::string, std::string>>& config) {
    std::string out = fmt::format("# {}\n# config:", kManifestSchema);
    for (const auto& [k, v] : config) out += fmt::format(" {}={}", k, v);
    out += "\nid\tsplit\tclass\tseed\tmask\tdetections\toccluded\n";
    for (const ManifestEntry& e : entries) {
        std::string occluded;
        for (std::size_t k = 0; k < e.occluded.size(); ++k) occluded += (k ? "," : "") + std::to_string(e.occluded[k]);
        if (occluded.empty()) occluded = "-";
        out += fmt::format("{}\t{}\t{}\t{}\t{}\t{}\t{}\n", e.id, e.split, e.label, e.seed, e.mask_path,
                           e.detections_path, occluded);
    }
    return out;
}

namespace {

template <typename T>
T parse_number(std::string_view text, const std::string& where, const char* what) {
    T value{};
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw IoError(fmt::format("{}: malformed {} '{}'", where, what, text));
    }
    return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

}  // namespace

std::vector<ManifestEntry> parse_manifest(std::string_view text, const std::string& origin) {
    std::vector<ManifestEntry> out;
    bool schema_seen = false;
    bool columns_seen = false;
    std::size_t line_no = 0;
    for (std::string_view line : split(text, '\n')) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.empty()) continue;
        const std::string where = fmt::format("{}:{}", origin, line_no);
        if (line.front() == '#') {
            if (line.substr(1).find(kManifestSchema) != std::string_view::npos) schema_seen = true;
            continue;
        }
        if (!schema_seen) throw IoError(fmt::format("{}: missing '# {}' header", origin, kManifestSchema));
        if (!columns_seen) {
            if (line != "id\tsplit\tclass\tseed\tmask\tdetections\toccluded") {
                throw IoError(fmt::format("{}: unexpected column header", where));
            }
            columns_seen = true;
            continue;
        }
        const auto cols = split(line, '\t');
        if (cols.size() != 7) throw IoError(fmt::format("{}: expected 7 columns, found {}", where, cols.size()));
        ManifestEntry e;
        e.id = cols[0];
        e.split = cols[1];
        if (e.split != "train" && e.split != "test") throw IoError(fmt::format("{}: unknown split '{}'", where, e.split));
        e.label = parse_number<int>(cols[2], where, "class");
        e.seed = parse_number<std::uint64_t>(cols[3], where, "seed");
        e.mask_path = cols[4];
        e.detections_path = cols[5];
        if (cols[6] != "-") {
            for (auto part : split(cols[6], ',')) e.occluded.push_back(parse_number<int>(part, where, "occluded index"));
        }
        out.push_back(std::move(e));
    }
    if (!schema_seen) throw IoError(fmt::format("{}: missing '# {}' header", origin, kManifestSchema));
    return out;
}

std::vector<ManifestEntry> read_manifest(const fs::path& path) {
    return parse_manifest(io::read_file(path), path.string());
}

// ---------------------------------------------------------------------------
// Datasets

ManifestEntry plan_sample(const DatasetConfig& config, int index) {
    const int classes = static_cast<int>(config.templates.size());
    ManifestEntry e;
    const bool train = index < config.train_samples;
    const int within = train ? index : index - config.train_samples;
    e.id = fmt::format("s{:05d}", index);
    e.split = train ? "train" : "test";
    e.label = config.templates[static_cast<std::size_t>(within % classes)].label;
    e.seed = derive_seed(config.seed, static_cast<std::uint64_t>(index));
    e.mask_path = fmt::format("masks/{}.pgm", e.id);
    e.detections_path = fmt::format("detections/{}.json", e.id);
    return e;
}

std::vector<ManifestEntry> generate_dataset(const DatasetConfig& config, const fs::path& out_dir, int threads) {
    if (config.templates.size() < 2) throw ConfigError("a dataset needs at least two scene templates");
    if (config.train_samples < 0 || config.test_samples < 0) throw ConfigError("sample counts must be nonnegative");
    for (const SceneTemplate& t : config.templates) validate_template(t, config.scene);

    const int total = config.train_samples + config.test_samples;
    std::vector<ManifestEntry> entries(static_cast<std::size_t>(total));
    parallel_for(entries.size(), threads, [&](std::size_t i) {
        ManifestEntry e = plan_sample(config, static_cast<int>(i));
        const auto tmpl = std::find_if(config.templates.begin(), config.templates.end(),
                                       [&](const SceneTemplate& t) { return t.label == e.label; });
        const SceneSample sample = generate_scene(*tmpl, config.scene, e.seed);
        for (std::size_t k = 0; k < sample.sources.size(); ++k)
            if (sample.sources[k].occluded) e.occluded.push_back(static_cast<int>(k));
        io::write_mask(sample.mask, out_dir / e.mask_path);
        io::write_detections(sample.detections, out_dir / e.detections_path);
        entries[i] = std::move(e);
    });

    if (config.labels.seg_categories() > 0 || config.labels.obj_categories() > 0) {
        io::write_file(out_dir / "labels.json", io::encode_labels(config.labels));
    }
    const std::vector<std::pair<std::string, std::string>> echo = {
        {"seg_categories", std::to_string(config.scene.seg_categories)},
        {"obj_categories", std::to_string(config.scene.obj_categories)},
        {"width", std::to_string(config.scene.width)},
        {"height", std::to_string(config.scene.height)},
        {"train", std::to_string(config.train_samples)},
        {"test", std::to_string(config.test_samples)},
        {"seed", std::to_string(config.seed)},
        {"templates", std::to_string(config.templates.size())},
    };
    io::write_file(out_dir / "manifest.tsv", encode_manifest(entries, echo));
    return entries;
}

}  // namespace semfeat::synth
