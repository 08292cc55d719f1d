#include <doctest.h>

#include <filesystem>

#include "oracles.hpp"
#include "semfeat/error.hpp"
#include "semfeat/io.hpp"
#include "semfeat/moments.hpp"
#include "semfeat/synth.hpp"

using namespace semfeat;
namespace fs = std::filesystem;

namespace {

synth::ShapeRule square_rule() {
    synth::ShapeRule r;
    r.seg_category = 1;
    r.width = {10.0 / 40, 10.0 / 40};
    r.height = {10.0 / 40, 10.0 / 40};
    r.region = {0.5, 0.5, 0.5, 0.5};
    r.obj_category = 1;
    r.confidence = {0.9, 0.9};
    return r;
}

}  // namespace

TEST_CASE("template with zero presence renders nothing") {
    synth::ShapeRule r = square_rule();
    r.presence = 0.0;
    const synth::SceneTemplate t{0, "empty", {r}};
    const synth::SceneSample s = synth::generate_scene(t, synth::SceneConfig{40, 40, 1, 1}, 3);
    CHECK(s.mask.void_count() == 1600);
    CHECK(s.detections.empty());
}

TEST_CASE("forced 10x10 rectangle") {
    const synth::SceneTemplate t{0, "square", {square_rule()}};
    const synth::SceneSample s = synth::generate_scene(t, synth::SceneConfig{40, 40, 1, 1}, 3);
    CHECK(compute_moments(s.mask).category(1).pixel_count() == 100);
    REQUIRE(s.detections.size() == 1);
    const BoundingBox& b = s.detections.detections()[0].box;
    CHECK(b.x_max - b.x_min == 10.0);
    CHECK(b.y_max - b.y_min == 10.0);
}

TEST_CASE("generate_scene is deterministic and consistent with its detections") {
    const synth::DatasetConfig cfg = synth::default_dataset_config();
    for (const synth::SceneTemplate& t : cfg.templates) {
        for (std::uint64_t seed : {1u, 2u, 99u}) {
            const synth::SceneSample a = synth::generate_scene(t, cfg.scene, seed);
            const synth::SceneSample b = synth::generate_scene(t, cfg.scene, seed);
            CHECK(a.mask == b.mask);
            CHECK(a.detections == b.detections);
            CHECK(a.label == t.label);
            for (std::size_t k = 0; k < a.sources.size(); ++k) {
                if (a.sources[k].occluded) continue;
                const BoundingBox& box = a.detections.detections()[k].box;
                bool found = false;
                for (int r = static_cast<int>(box.y_min); r < static_cast<int>(std::ceil(box.y_max)) && !found; ++r)
                    for (int c = static_cast<int>(box.x_min); c < static_cast<int>(std::ceil(box.x_max)) && !found; ++c)
                        found = a.mask.at(r, c) == a.sources[k].seg_category;
                CHECK(found);
            }
        }
    }
}

TEST_CASE("templates are validated") {
    synth::ShapeRule r = square_rule();
    r.seg_category = 5;
    CHECK_THROWS_AS(synth::validate_template({0, "bad", {r}}, synth::SceneConfig{40, 40, 1, 1}), ConfigError);
    r = square_rule();
    r.obj_category = 3;
    CHECK_THROWS_AS(synth::validate_template({0, "bad", {r}}, synth::SceneConfig{40, 40, 1, 1}), ConfigError);
}

TEST_CASE("transform identities") {
    Rng rng(12);
    const SegmentationMask m = oracle::random_mask(rng, 17, 11, 4);
    CHECK(synth::transform_mask(m, synth::Translate{0, 0}) == m);
    for (auto axis : {synth::Flip::left_right, synth::Flip::top_bottom}) {
        const auto once = synth::transform_mask(m, synth::Reflect{axis});
        CHECK(synth::transform_mask(once, synth::Reflect{axis}) == m);
    }
    SegmentationMask r = m;
    for (int k = 0; k < 4; ++k) r = synth::transform_mask(r, synth::Rotate90{1});
    CHECK(r == m);
    CHECK(synth::transform_mask(m, synth::Rotate90{1}).width() == 11);
    CHECK(synth::transform_mask(m, synth::Rotate90{2}) ==
          synth::transform_mask(synth::transform_mask(m, synth::Rotate90{1}), synth::Rotate90{1}));
    CHECK(synth::transform_mask(m, synth::Rotate{0.0}) == m);
}

TEST_CASE("exact transforms conserve per-category pixel counts") {
    Rng rng(13);
    const SegmentationMask m = oracle::random_mask(rng, 20, 20, 3);
    const MomentSet ref = compute_moments(m);
    for (const synth::MaskTransform& t :
         {synth::MaskTransform{synth::Reflect{synth::Flip::left_right}}, synth::MaskTransform{synth::Rotate90{3}}}) {
        const MomentSet got = compute_moments(synth::transform_mask(m, t));
        for (int n = 1; n <= 3; ++n) CHECK(got.category(n).pixel_count() == ref.category(n).pixel_count());
    }
    const MomentSet scaled = compute_moments(synth::transform_mask(m, synth::Scale{3}));
    for (int n = 1; n <= 3; ++n) CHECK(scaled.category(n).pixel_count() == 9 * ref.category(n).pixel_count());
}

TEST_CASE("transforms that lose pixels raise clipping errors") {
    std::vector<CategoryIndex> px(25, 0);
    px[4] = 1;  // top-right corner
    const SegmentationMask m(5, 5, 1, px);
    CHECK_THROWS_AS(synth::transform_mask(m, synth::Translate{1, 0}), ClippingError);
    CHECK_NOTHROW(synth::transform_mask(m, synth::Translate{-1, 1}));
    CHECK_THROWS_AS(synth::transform_mask(m, synth::Rotate{0.7}), ClippingError);
    CHECK(synth::describe(synth::Rotate90{1}) == "rotate90(1)");
}

TEST_CASE("small dataset: files, manifest rows, determinism") {
    synth::DatasetConfig cfg = synth::default_dataset_config();
    cfg.templates.resize(2);
    cfg.train_samples = 14;
    cfg.test_samples = 6;
    const fs::path a = fs::temp_directory_path() / "semfeat_unit" / "ds_a";
    const fs::path b = fs::temp_directory_path() / "semfeat_unit" / "ds_b";
    fs::remove_all(a);
    fs::remove_all(b);
    const auto entries = synth::generate_dataset(cfg, a, 1);
    synth::generate_dataset(cfg, b, 3);
    CHECK(entries.size() == 20);
    std::size_t masks = 0, dets = 0;
    for (const auto& e : fs::directory_iterator(a / "masks")) masks += e.is_regular_file();
    for (const auto& e : fs::directory_iterator(a / "detections")) dets += e.is_regular_file();
    CHECK(masks == 20);
    CHECK(dets == 20);
    const auto parsed = synth::read_manifest(a / "manifest.tsv");
    CHECK(parsed == entries);
    CHECK(io::read_file(a / "manifest.tsv") == io::read_file(b / "manifest.tsv"));
    for (const auto& e : entries) {
        CHECK(io::read_file(a / e.mask_path) == io::read_file(b / e.mask_path));
        CHECK(io::read_file(a / e.detections_path) == io::read_file(b / e.detections_path));
    }
    int per_class[2] = {0, 0};
    for (const auto& e : entries) ++per_class[e.label];
    CHECK(per_class[0] == 10);
    CHECK(per_class[1] == 10);
}

TEST_CASE("manifest parser rejects malformed rows") {
    CHECK_THROWS_AS(synth::parse_manifest("id\tsplit\n"), IoError);
    const std::string head = "# semfeat.manifest/1\nid\tsplit\tclass\tseed\tmask\tdetections\toccluded\n";
    CHECK(synth::parse_manifest(head).empty());
    CHECK_THROWS_AS(synth::parse_manifest(head + "s0\tval\t0\t1\tm\td\t-\n"), IoError);
    CHECK_THROWS_AS(synth::parse_manifest(head + "s0\ttrain\tx\t1\tm\td\t-\n"), IoError);
    CHECK(synth::parse_manifest(head + "s0\ttrain\t2\t1\tm\td\t0,3\n")[0].occluded == std::vector<int>{0, 3});
}
