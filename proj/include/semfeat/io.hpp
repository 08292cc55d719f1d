#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "semfeat/core.hpp"
#include "semfeat/extract.hpp"

namespace semfeat::io {

// Schema identifiers carried by every structured document.
inline constexpr std::string_view kDetectionsSchema = "semfeat.detections/1";
inline constexpr std::string_view kFeaturesSchema = "semfeat.features/1";
inline constexpr std::string_view kLabelsSchema = "semfeat.labels/1";
inline constexpr std::string_view kModelSchema = "semfeat.model/1";

/// Shortest exact hexadecimal form, e.g. "0x1.8p+1", "-0x0p+0", "inf".
std::string format_hex(double value);
/// Accepts the output of format_hex (and plain decimal); throws IoError otherwise.
double parse_hex(std::string_view text);

std::string read_file(const std::filesystem::path& path);
/// Writes through a temporary sibling and renames it into place.
void write_file(const std::filesystem::path& path, std::string_view contents);

// ---------------------------------------------------------------------------
// Masks (PGM)

enum class PgmEncoding { binary, plain };

/// Parses a P5 or P2 graymap whose values are category indices.
/// Values above maxval are malformed; values above `categories` fail validation.
SegmentationMask parse_pgm(std::string_view bytes, int categories, const std::string& origin = "<memory>");
SegmentationMask load_mask(const std::filesystem::path& path, int categories);

/// maxval is max(categories, 1); 16-bit big-endian samples when it exceeds 255.
std::string encode_pgm(const SegmentationMask& mask, PgmEncoding encoding = PgmEncoding::binary);
void write_mask(const SegmentationMask& mask, const std::filesystem::path& path,
                PgmEncoding encoding = PgmEncoding::binary);

// ---------------------------------------------------------------------------
// Detections

struct DetectionLoad {
    DetectionSet detections;
    std::size_t dropped = 0;  ///< records below the confidence threshold
    std::size_t clamped = 0;  ///< boxes pulled back into the frame
    std::vector<std::string> warnings;
};

/// Records with confidence < threshold are dropped. Categories given as names
/// are resolved through `labels`; a null `labels` makes names an error.
DetectionLoad parse_detections(std::string_view text, double confidence_threshold, const LabelMap* labels = nullptr,
                               const std::string& origin = "<memory>");
DetectionLoad load_detections(const std::filesystem::path& path, double confidence_threshold,
                              const LabelMap* labels = nullptr);

std::string encode_detections(const DetectionSet& detections);
void write_detections(const DetectionSet& detections, const std::filesystem::path& path);

// ---------------------------------------------------------------------------
// Labels

LabelMap parse_labels(std::string_view text, const std::string& origin = "<memory>");
LabelMap load_labels(const std::filesystem::path& path);
std::string encode_labels(const LabelMap& labels);

// ---------------------------------------------------------------------------
// Feature files

/// Extraction parameters stored alongside the features.
/// The bin count lives in FeatureShape.
struct ExtractionInfo {
    double rho = 3.0;
    double confidence_threshold = 0.2;
    std::string log_base = "e";
    /// Echo of the run configuration (vocabulary sizes, seed, inputs...).
    std::map<std::string, std::string> config;

    bool operator==(const ExtractionInfo&) const = default;
};

struct FeatureFile {
    FeatureShape shape;
    ExtractionInfo info;
    FeatureSet features;

    bool operator==(const FeatureFile&) const = default;
};

/// Throws ConfigError when a present block disagrees with `file.shape`.
std::string encode_features(const FeatureFile& file);
FeatureFile parse_features(std::string_view text, const std::string& origin = "<memory>");
void write_features(const FeatureFile& file, const std::filesystem::path& path);
FeatureFile read_features(const std::filesystem::path& path);

}  // namespace semfeat::io
