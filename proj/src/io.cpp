#include "semfeat/io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <json.hpp>

#include "semfeat/error.hpp"

namespace semfeat::io {

namespace fs = std::filesystem;
using nlohmann::json;

// ---------------------------------------------------------------------------
// Hex floats and files

std::string format_hex(double value) {
    if (std::isnan(value)) return "nan";
    if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const double magnitude = std::fabs(value);
    const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), magnitude, std::chars_format::hex);
    if (ec != std::errc{}) throw IoError("hex float formatting failed");
    std::string out = std::signbit(value) ? "-0x" : "0x";
    out.append(buf.data(), end);
    return out;
}

double parse_hex(std::string_view text) {
    if (text == "nan") return std::nan("");
    if (text == "inf") return HUGE_VAL;
    if (text == "-inf") return -HUGE_VAL;
    bool negative = false;
    std::string_view body = text;
    if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
        negative = body.front() == '-';
        body.remove_prefix(1);
    }
    double value = 0;
    std::from_chars_result res{};
    if (body.size() > 2 && body[0] == '0' && (body[1] == 'x' || body[1] == 'X')) {
        body.remove_prefix(2);
        res = std::from_chars(body.data(), body.data() + body.size(), value, std::chars_format::hex);
    } else {
        res = std::from_chars(body.data(), body.data() + body.size(), value, std::chars_format::general);
    }
    if (body.empty() || res.ec != std::errc{} || res.ptr != body.data() + body.size()) {
        throw IoError(fmt::format("malformed real '{}'", text));
    }
    return negative ? -value : value;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(fmt::format("cannot open '{}' for reading", path.string()));
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw IoError(fmt::format("read error on '{}'", path.string()));
    return std::move(buf).str();
}

void write_file(const fs::path& path, std::string_view contents) {
    if (path.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(path.parent_path(), ec);
        if (ec) throw IoError(fmt::format("cannot create directory '{}': {}", path.parent_path().string(), ec.message()));
    }
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError(fmt::format("cannot open '{}' for writing", tmp.string()));
        out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!out) throw IoError(fmt::format("write error on '{}'", tmp.string()));
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) throw IoError(fmt::format("cannot move '{}' into place: {}", path.string(), ec.message()));
}

// ---------------------------------------------------------------------------
// PGM

namespace {

class PgmHeaderReader {
public:
    PgmHeaderReader(std::string_view bytes, const std::string& origin) : bytes_(bytes), origin_(origin) {}

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            const char c = bytes_[pos_];
            if (c == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n' && bytes_[pos_] != '\r') ++pos_;
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos_;
            } else {
                break;
            }
        }
    }

    long number(const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) ++pos_;
        if (pos_ == start) throw IoError(fmt::format("{}: malformed PGM header, expected {}", origin_, what));
        long value = 0;
        const auto res = std::from_chars(bytes_.data() + start, bytes_.data() + pos_, value);
        if (res.ec != std::errc{}) throw IoError(fmt::format("{}: PGM {} out of range", origin_, what));
        return value;
    }

    std::size_t pos() const noexcept { return pos_; }
    void advance(std::size_t n) noexcept { pos_ += n; }
    bool at_end() const noexcept { return pos_ >= bytes_.size(); }

private:
    std::string_view bytes_;
    const std::string& origin_;
    std::size_t pos_ = 2;  // past the magic number
};

}  // namespace

SegmentationMask parse_pgm(std::string_view bytes, int categories, const std::string& origin) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '2')) {
        throw IoError(fmt::format("{}: not a PGM file (expected P5 or P2 magic)", origin));
    }
    const bool binary = bytes[1] == '5';
    PgmHeaderReader reader(bytes, origin);
    const long width = reader.number("width");
    const long height = reader.number("height");
    const long maxval = reader.number("maxval");
    if (width < 1 || height < 1 || width > kMaxMaskDimension || height > kMaxMaskDimension) {
        throw IoError(fmt::format("{}: unsupported PGM dimensions {}x{}", origin, width, height));
    }
    if (maxval < 1 || maxval > 65535) throw IoError(fmt::format("{}: PGM maxval {} outside [1, 65535]", origin, maxval));

    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    std::vector<CategoryIndex> pixels(count);

    if (binary) {
        // exactly one whitespace byte separates the header from the payload
        if (reader.at_end() || !std::isspace(static_cast<unsigned char>(bytes[reader.pos()]))) {
            throw IoError(fmt::format("{}: PGM header not terminated by whitespace", origin));
        }
        reader.advance(1);
        const std::size_t sample = maxval > 255 ? 2 : 1;
        const std::size_t available = bytes.size() - reader.pos();
        if (available != count * sample) {
            throw IoError(fmt::format("{}: PGM payload size mismatch: {} bytes for {}x{} samples of {} byte(s)", origin,
                                      available, width, height, sample));
        }
        const auto* data = reinterpret_cast<const unsigned char*>(bytes.data() + reader.pos());
        for (std::size_t k = 0; k < count; ++k) {
            pixels[k] = sample == 2 ? static_cast<CategoryIndex>((data[2 * k] << 8) | data[2 * k + 1])
                                    : static_cast<CategoryIndex>(data[k]);
        }
    } else {
        for (std::size_t k = 0; k < count; ++k) {
            reader.skip_space_and_comments();
            if (reader.at_end()) {
                throw IoError(fmt::format("{}: PGM payload size mismatch: {} of {} samples present", origin, k, count));
            }
            const long v = reader.number("sample");
            if (v > 65535) throw IoError(fmt::format("{}: PGM sample {} out of range", origin, v));
            pixels[k] = static_cast<CategoryIndex>(v);
        }
        reader.skip_space_and_comments();
        if (!reader.at_end()) throw IoError(fmt::format("{}: PGM payload size mismatch: trailing data", origin));
    }

    for (std::size_t k = 0; k < count; ++k) {
        if (pixels[k] > maxval) {
            throw IoError(fmt::format("{}: sample {} at (row {}, col {}) exceeds maxval {}", origin, pixels[k],
                                      k / static_cast<std::size_t>(width), k % static_cast<std::size_t>(width), maxval));
        }
    }
    try {
        return SegmentationMask(static_cast<int>(width), static_cast<int>(height), categories, std::move(pixels));
    } catch (const ValidationError& e) {
        throw ValidationError(fmt::format("{}: {}", origin, e.what()));
    }
}

SegmentationMask load_mask(const fs::path& path, int categories) {
    return parse_pgm(read_file(path), categories, path.string());
}

std::string encode_pgm(const SegmentationMask& mask, PgmEncoding encoding) {
    const int maxval = std::max(mask.categories(), 1);
    std::string out = fmt::format("{}\n{} {}\n{}\n", encoding == PgmEncoding::binary ? "P5" : "P2", mask.width(),
                                  mask.height(), maxval);
    const auto px = mask.pixels();
    if (encoding == PgmEncoding::binary) {
        if (maxval > 255) {
            for (CategoryIndex v : px) {
                out.push_back(static_cast<char>(v >> 8));
                out.push_back(static_cast<char>(v & 0xff));
            }
        } else {
            for (CategoryIndex v : px) out.push_back(static_cast<char>(v));
        }
    } else {
        for (int r = 0; r < mask.height(); ++r) {
            const auto row = mask.row(r);
            for (int c = 0; c < mask.width(); ++c) {
                if (c) out.push_back(' ');
                out += std::to_string(row[c]);
            }
            out.push_back('\n');
        }
    }
    return out;
}

void write_mask(const SegmentationMask& mask, const fs::path& path, PgmEncoding encoding) {
    write_file(path, encode_pgm(mask, encoding));
}

// ---------------------------------------------------------------------------
// Structured documents

namespace {

json parse_json(std::string_view text, const std::string& origin) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(fmt::format("{}: invalid document: {}", origin, e.what()));
    }
}

void expect_schema(const json& doc, std::string_view schema, const std::string& origin) {
    if (!doc.is_object() || !doc.contains("schema") || !doc["schema"].is_string()) {
        throw IoError(fmt::format("{}: missing schema field", origin));
    }
    if (doc["schema"].get<std::string>() != schema) {
        throw IoError(fmt::format("{}: schema '{}' is not '{}'", origin, doc["schema"].get<std::string>(), schema));
    }
}

const json& field(const json& obj, const char* name, const std::string& where) {
    if (!obj.is_object() || !obj.contains(name)) throw IoError(fmt::format("{}: missing field '{}'", where, name));
    return obj[name];
}

int int_field(const json& obj, const char* name, const std::string& where) {
    const json& v = field(obj, name, where);
    if (!v.is_number_integer()) throw IoError(fmt::format("{}: field '{}' must be an integer", where, name));
    return v.get<int>();
}

double real_field(const json& obj, const char* name, const std::string& where) {
    const json& v = field(obj, name, where);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_hex(v.get<std::string>());
    throw IoError(fmt::format("{}: field '{}' must be a number", where, name));
}

}  // namespace

// ---------------------------------------------------------------------------
// Detections

DetectionLoad parse_detections(std::string_view text, double confidence_threshold, const LabelMap* labels,
                               const std::string& origin) {
    const json doc = parse_json(text, origin);
    expect_schema(doc, kDetectionsSchema, origin);
    const int width = int_field(doc, "image_width", origin);
    const int height = int_field(doc, "image_height", origin);
    const int categories = int_field(doc, "categories", origin);
    if (width < 1 || height < 1) throw IoError(fmt::format("{}: image dimensions must be positive", origin));
    if (categories < 0) throw IoError(fmt::format("{}: negative category count", origin));
    if (labels && labels->obj_categories() > 0 && labels->obj_categories() != categories) {
        throw ConfigError(fmt::format("{}: file declares {} object categories, label map has {}", origin, categories,
                                      labels->obj_categories()));
    }
    const json& records = field(doc, "detections", origin);
    if (!records.is_array()) throw IoError(fmt::format("{}: 'detections' must be an array", origin));

    DetectionLoad out{DetectionSet(width, height, categories), 0, 0, {}};
    std::vector<Detection> kept;
    for (std::size_t idx = 0; idx < records.size(); ++idx) {
        const json& rec = records[idx];
        const std::string where = fmt::format("{}: record {}", origin, idx);
        Detection d;

        const json& cat = field(rec, "category", where);
        if (cat.is_number_integer()) {
            d.category = cat.get<int>();
        } else if (cat.is_string()) {
            const std::string name = cat.get<std::string>();
            const auto resolved = labels ? labels->obj_index(name) : std::nullopt;
            if (!resolved) throw IoError(fmt::format("{}: unknown object category name '{}'", where, name));
            d.category = *resolved;
        } else {
            throw IoError(fmt::format("{}: 'category' must be an index or a name", where));
        }
        if (d.category < 1 || d.category > categories) {
            throw IoError(fmt::format("{}: category {} outside [1, {}]", where, d.category, categories));
        }

        const json& bbox = field(rec, "bbox", where);
        if (!bbox.is_array() || bbox.size() != 4 ||
            !std::all_of(bbox.begin(), bbox.end(), [](const json& v) { return v.is_number(); })) {
            throw IoError(fmt::format("{}: 'bbox' must be [x_min, y_min, x_max, y_max]", where));
        }
        BoundingBox b{bbox[0].get<double>(), bbox[1].get<double>(), bbox[2].get<double>(), bbox[3].get<double>()};
        if (!(b.x_min <= b.x_max) || !(b.y_min <= b.y_max)) {
            throw IoError(fmt::format("{}: inverted box ({}, {}, {}, {})", where, b.x_min, b.y_min, b.x_max, b.y_max));
        }
        d.confidence = real_field(rec, "confidence", where);
        if (!(d.confidence >= 0.0 && d.confidence <= 1.0)) {
            throw IoError(fmt::format("{}: confidence {} outside [0, 1]", where, d.confidence));
        }

        const BoundingBox clamped{std::clamp(b.x_min, 0.0, double(width)), std::clamp(b.y_min, 0.0, double(height)),
                                  std::clamp(b.x_max, 0.0, double(width)), std::clamp(b.y_max, 0.0, double(height))};
        if (!(clamped == b)) {
            out.warnings.push_back(fmt::format("{}: box ({}, {}, {}, {}) clamped to the {}x{} frame", where, b.x_min,
                                               b.y_min, b.x_max, b.y_max, width, height));
            ++out.clamped;
        }
        d.box = clamped;

        if (d.confidence < confidence_threshold) {
            ++out.dropped;
            continue;
        }
        kept.push_back(d);
    }
    out.detections = DetectionSet(width, height, categories, std::move(kept));
    return out;
}

DetectionLoad load_detections(const fs::path& path, double confidence_threshold, const LabelMap* labels) {
    return parse_detections(read_file(path), confidence_threshold, labels, path.string());
}

std::string encode_detections(const DetectionSet& detections) {
    json records = json::array();
    for (const Detection& d : detections.detections()) {
        records.push_back({{"category", d.category},
                           {"bbox", {d.box.x_min, d.box.y_min, d.box.x_max, d.box.y_max}},
                           {"confidence", d.confidence}});
    }
    const json doc = {{"schema", kDetectionsSchema},
                      {"image_width", detections.image_width()},
                      {"image_height", detections.image_height()},
                      {"categories", detections.categories()},
                      {"detections", records}};
    return doc.dump(2) + "\n";
}

void write_detections(const DetectionSet& detections, const fs::path& path) {
    write_file(path, encode_detections(detections));
}

// ---------------------------------------------------------------------------
// Labels

LabelMap parse_labels(std::string_view text, const std::string& origin) {
    const json doc = parse_json(text, origin);
    expect_schema(doc, kLabelsSchema, origin);
    const auto names = [&](const char* key) {
        const json& arr = field(doc, key, origin);
        if (!arr.is_array() || !std::all_of(arr.begin(), arr.end(), [](const json& v) { return v.is_string(); })) {
            throw IoError(fmt::format("{}: '{}' must be an array of names", origin, key));
        }
        return arr.get<std::vector<std::string>>();
    };
    try {
        return LabelMap(names("segmentation"), names("objects"));
    } catch (const ValidationError& e) {
        throw ValidationError(fmt::format("{}: {}", origin, e.what()));
    }
}

LabelMap load_labels(const fs::path& path) { return parse_labels(read_file(path), path.string()); }

std::string encode_labels(const LabelMap& labels) {
    const json doc = {{"schema", kLabelsSchema}, {"segmentation", labels.seg_names()}, {"objects", labels.obj_names()}};
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Features

namespace {

json real_array(std::span<const double> values) {
    json arr = json::array();
    for (double v : values) arr.push_back(format_hex(v));
    return arr;
}

template <std::size_t Cols>
json rows_block(const std::optional<FeatureRows<Cols>>& rows) {
    if (!rows) return {{"present", false}};
    std::vector<double> flat;
    for (const auto& r : rows->rows()) flat.insert(flat.end(), r.begin(), r.end());
    return {{"present", true}, {"rows", rows->categories()}, {"cols", Cols}, {"values", real_array(flat)}};
}

std::vector<double> read_reals(const json& block, const std::string& where) {
    const json& arr = field(block, "values", where);
    if (!arr.is_array()) throw IoError(fmt::format("{}: 'values' must be an array", where));
    std::vector<double> out;
    out.reserve(arr.size());
    for (const json& v : arr) {
        if (v.is_string()) {
            out.push_back(parse_hex(v.get<std::string>()));
        } else if (v.is_number()) {
            out.push_back(v.get<double>());
        } else {
            throw IoError(fmt::format("{}: non-numeric value", where));
        }
    }
    return out;
}

std::vector<std::uint32_t> read_counts(const json& block, const std::string& where) {
    const json& arr = field(block, "values", where);
    if (!arr.is_array()) throw IoError(fmt::format("{}: 'values' must be an array", where));
    std::vector<std::uint32_t> out;
    out.reserve(arr.size());
    for (const json& v : arr) {
        if (!v.is_number_unsigned()) throw IoError(fmt::format("{}: counts must be nonnegative integers", where));
        out.push_back(v.get<std::uint32_t>());
    }
    return out;
}

bool present(const json& blocks, const char* name, const std::string& origin) {
    const std::string where = fmt::format("{}: block '{}'", origin, name);
    const json& block = field(blocks, name, origin);
    const json& flag = field(block, "present", where);
    if (!flag.is_boolean()) throw IoError(fmt::format("{}: 'present' must be a boolean", where));
    return flag.get<bool>();
}

void shape_mismatch(const char* shape_field, int declared, const char* block, std::size_t actual, const char* unit) {
    throw ConfigError(fmt::format("shape field '{}' = {} disagrees with block '{}' ({} {})", shape_field, declared,
                                  block, actual, unit));
}

void check_consistency(const FeatureFile& file) {
    const FeatureShape& s = file.shape;
    const FeatureSet& f = file.features;
    if (s.seg_categories < 0 || s.obj_categories < 0 || s.bins < 0 || s.global_dim < 0) {
        throw ConfigError("shape fields must be nonnegative");
    }
    if (f.shmf && f.shmf->categories() != s.seg_categories)
        shape_mismatch("seg_categories", s.seg_categories, "shmf", f.shmf->categories(), "rows");
    if (f.ssf && f.ssf->categories() != s.seg_categories)
        shape_mismatch("seg_categories", s.seg_categories, "ssf", f.ssf->categories(), "rows");
    if (f.sfv && f.sfv->categories() != s.obj_categories)
        shape_mismatch("obj_categories", s.obj_categories, "sfv", f.sfv->categories(), "entries");
    if (f.sfm && f.sfm->categories() != s.obj_categories)
        shape_mismatch("obj_categories", s.obj_categories, "sfm", f.sfm->categories(), "categories");
    if (f.sfm && f.sfm->bins() != s.bins) shape_mismatch("bins", s.bins, "sfm", f.sfm->bins(), "bins");
    if (f.global && static_cast<int>(f.global->size()) != s.global_dim)
        shape_mismatch("global_dim", s.global_dim, "global", f.global->size(), "values");
}

}  // namespace

std::string encode_features(const FeatureFile& file) {
    check_consistency(file);
    const FeatureSet& f = file.features;
    json blocks;
    blocks["shmf"] = rows_block(f.shmf);
    blocks["ssf"] = rows_block(f.ssf);
    blocks["sfv"] = f.sfv ? json{{"present", true}, {"length", f.sfv->categories()}, {"values", f.sfv->counts()}}
                          : json{{"present", false}};
    blocks["sfm"] = f.sfm ? json{{"present", true},
                                 {"categories", f.sfm->categories()},
                                 {"bins", f.sfm->bins()},
                                 {"values", f.sfm->values()}}
                          : json{{"present", false}};
    blocks["global"] = f.global ? json{{"present", true}, {"length", f.global->size()}, {"values", real_array(*f.global)}}
                                : json{{"present", false}};
    const json doc = {{"schema", kFeaturesSchema},
                      {"shape",
                       {{"seg_categories", file.shape.seg_categories},
                        {"obj_categories", file.shape.obj_categories},
                        {"bins", file.shape.bins},
                        {"global_dim", file.shape.global_dim}}},
                      {"extraction",
                       {{"rho", format_hex(file.info.rho)},
                        {"confidence_threshold", format_hex(file.info.confidence_threshold)},
                        {"log_base", file.info.log_base}}},
                      {"config", file.info.config},
                      {"blocks", blocks}};
    return doc.dump(2) + "\n";
}

FeatureFile parse_features(std::string_view text, const std::string& origin) {
    const json doc = parse_json(text, origin);
    expect_schema(doc, kFeaturesSchema, origin);

    FeatureFile file;
    const json& shape = field(doc, "shape", origin);
    const std::string shape_where = origin + ": shape";
    file.shape.seg_categories = int_field(shape, "seg_categories", shape_where);
    file.shape.obj_categories = int_field(shape, "obj_categories", shape_where);
    file.shape.bins = int_field(shape, "bins", shape_where);
    file.shape.global_dim = int_field(shape, "global_dim", shape_where);

    const json& extraction = field(doc, "extraction", origin);
    const std::string ex_where = origin + ": extraction";
    file.info.rho = real_field(extraction, "rho", ex_where);
    file.info.confidence_threshold = real_field(extraction, "confidence_threshold", ex_where);
    const json& base = field(extraction, "log_base", ex_where);
    if (!base.is_string()) throw IoError(fmt::format("{}: 'log_base' must be a string", ex_where));
    file.info.log_base = base.get<std::string>();
    if (doc.contains("config")) {
        const json& cfg = doc["config"];
        if (!cfg.is_object()) throw IoError(fmt::format("{}: 'config' must be an object", origin));
        for (const auto& [k, v] : cfg.items()) {
            if (!v.is_string()) throw IoError(fmt::format("{}: config entry '{}' must be a string", origin, k));
            file.info.config[k] = v.get<std::string>();
        }
    }

    const json& blocks = field(doc, "blocks", origin);
    const auto rows_of = [&](const char* name, std::size_t cols, const char* count_field,
                             int declared) -> std::optional<std::vector<double>> {
        if (!present(blocks, name, origin)) return std::nullopt;
        const std::string where = fmt::format("{}: block '{}'", origin, name);
        const json& block = blocks[name];
        const int rows = int_field(block, "rows", where);
        const int c = int_field(block, "cols", where);
        if (c != static_cast<int>(cols)) throw IoError(fmt::format("{}: expected {} columns, found {}", where, cols, c));
        if (rows != declared) {
            throw IoError(fmt::format("{}: shape field '{}' = {} disagrees with {} rows", where, count_field, declared,
                                      rows));
        }
        auto values = read_reals(block, where);
        if (values.size() != static_cast<std::size_t>(rows) * cols) {
            throw IoError(fmt::format("{}: {} values for {}x{}", where, values.size(), rows, cols));
        }
        return values;
    };

    if (auto v = rows_of("shmf", 7, "seg_categories", file.shape.seg_categories)) {
        ShmfMatrix m(file.shape.seg_categories);
        for (int n = 1; n <= m.categories(); ++n)
            std::copy_n(v->begin() + (n - 1) * 7, 7, m.row(n).begin());
        file.features.shmf = std::move(m);
    }
    if (auto v = rows_of("ssf", 5, "seg_categories", file.shape.seg_categories)) {
        SsfMatrix m(file.shape.seg_categories);
        for (int n = 1; n <= m.categories(); ++n)
            std::copy_n(v->begin() + (n - 1) * 5, 5, m.row(n).begin());
        file.features.ssf = std::move(m);
    }
    if (present(blocks, "sfv", origin)) {
        const std::string where = origin + ": block 'sfv'";
        const int length = int_field(blocks["sfv"], "length", where);
        if (length != file.shape.obj_categories) {
            throw IoError(fmt::format("{}: shape field 'obj_categories' = {} disagrees with length {}", where,
                                      file.shape.obj_categories, length));
        }
        const auto counts = read_counts(blocks["sfv"], where);
        if (counts.size() != static_cast<std::size_t>(length)) {
            throw IoError(fmt::format("{}: {} values for length {}", where, counts.size(), length));
        }
        Sfv s(length);
        for (int i = 1; i <= length; ++i) s.count(i) = counts[static_cast<std::size_t>(i - 1)];
        file.features.sfv = std::move(s);
    }
    if (present(blocks, "sfm", origin)) {
        const std::string where = origin + ": block 'sfm'";
        const int cats = int_field(blocks["sfm"], "categories", where);
        const int bins = int_field(blocks["sfm"], "bins", where);
        if (cats != file.shape.obj_categories) {
            throw IoError(fmt::format("{}: shape field 'obj_categories' = {} disagrees with {} categories", where,
                                      file.shape.obj_categories, cats));
        }
        if (bins != file.shape.bins) {
            throw IoError(
                fmt::format("{}: shape field 'bins' = {} disagrees with {} bins", where, file.shape.bins, bins));
        }
        const auto counts = read_counts(blocks["sfm"], where);
        Sfm s(cats, bins);
        if (counts.size() != s.values().size()) {
            throw IoError(fmt::format("{}: {} values for {}x{}x{}", where, counts.size(), cats, cats, bins));
        }
        std::size_t pos = 0;
        for (int i = 1; i <= cats; ++i)
            for (int j = 1; j <= cats; ++j)
                for (int k = 1; k <= bins; ++k) s.at(i, j, k) = counts[pos++];
        file.features.sfm = std::move(s);
    }
    if (present(blocks, "global", origin)) {
        const std::string where = origin + ": block 'global'";
        const int length = int_field(blocks["global"], "length", where);
        if (length != file.shape.global_dim) {
            throw IoError(fmt::format("{}: shape field 'global_dim' = {} disagrees with length {}", where,
                                      file.shape.global_dim, length));
        }
        auto values = read_reals(blocks["global"], where);
        if (values.size() != static_cast<std::size_t>(length)) {
            throw IoError(fmt::format("{}: {} values for length {}", where, values.size(), length));
        }
        file.features.global = std::move(values);
    }
    return file;
}

void write_features(const FeatureFile& file, const fs::path& path) { write_file(path, encode_features(file)); }

FeatureFile read_features(const fs::path& path) { return parse_features(read_file(path), path.string()); }

}  // namespace semfeat::io
