#include <doctest.h>

#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "semfeat/classifier.hpp"
#include "semfeat/io.hpp"
#include "semfeat/synth.hpp"

using namespace semfeat;
namespace fs = std::filesystem;

namespace {

struct Run {
    int status = -1;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    Run r;
    r.status = cli::run(args, out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / "semfeat_cli" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

}  // namespace

TEST_CASE("usage errors exit with status 1") {
    CHECK(run({"--help"}).status == 0);
    CHECK(run({}).status == 1);
    CHECK(run({"extract", "--bogus"}).status == 1);
    CHECK(run({"extract"}).status == 1);
    CHECK(run({"extract", "--mask", "/nonexistent.pgm", "--seg-categories", "3"}).status == 1);
}

TEST_CASE("mask-only extraction flags the object blocks as absent") {
    const fs::path d = dir("extract");
    io::write_mask(SegmentationMask(4, 3, 2, {0, 1, 1, 2, 0, 1, 2, 2, 0, 0, 0, 1}), d / "m.pgm");
    const Run r = run({"extract", "--mask", (d / "m.pgm").string(), "--seg-categories", "2", "--out",
                       (d / "f.json").string()});
    REQUIRE(r.status == 0);
    const io::FeatureFile f = io::read_features(d / "f.json");
    CHECK(f.features.shmf.has_value());
    CHECK(f.features.ssf.has_value());
    CHECK_FALSE(f.features.sfv.has_value());
    CHECK_FALSE(f.features.sfm.has_value());
    CHECK(f.info.config.at("seg_categories") == "2");

    CHECK(run({"extract", "--mask", (d / "m.pgm").string(), "--seg-categories", "1"}).status == 1);
}

TEST_CASE("invariance command exit statuses") {
    const fs::path d = dir("invariance");
    std::vector<CategoryIndex> px(48 * 48, 0);
    for (int r = 14; r < 30; ++r)
        for (int c = 10; c < 36; ++c) px[static_cast<std::size_t>(r) * 48 + c] = 1;
    io::write_mask(SegmentationMask(48, 48, 1, px), d / "rect.pgm");
    const Run ok = run({"invariance", "--mask", (d / "rect.pgm").string(), "--seg-categories", "1"});
    CHECK(ok.status == 0);
    CHECK(ok.out.find("result\tPASS") != std::string::npos);
    CHECK(ok.out.find("reflect(left_right)") != std::string::npos);

    // A mask filled to its border is padded, so rotation never clips.
    io::write_mask(SegmentationMask(8, 8, 1, std::vector<CategoryIndex>(64, 1)), d / "full.pgm");
    const Run full = run({"invariance", "--mask", (d / "full.pgm").string(), "--seg-categories", "1"});
    CHECK(full.status == 0);
    CHECK(full.out.find("# frame: 20x20") != std::string::npos);

    // 130x10 pads to 139x139; replicating that 64 times exceeds the maximum frame.
    io::write_mask(SegmentationMask(130, 10, 1, std::vector<CategoryIndex>(1300, 1)), d / "wide.pgm");
    CHECK(run({"invariance", "--mask", (d / "wide.pgm").string(), "--seg-categories", "1", "--scale", "64"}).status ==
          1);
}

TEST_CASE("bench rejects an empty corpus and reports throughput") {
    CHECK(run({"bench", "--samples", "0"}).status == 1);
    const Run r = run({"bench", "--samples", "2", "--size", "64", "--seg-categories", "3"});
    CHECK(r.status == 0);
    CHECK(r.out.find("suspended") != std::string::npos);
    CHECK(r.out.find("single_pass_mpix_per_s") != std::string::npos);
}

TEST_CASE("pipeline outputs do not depend on the thread count") {
    const fs::path d = dir("pipeline");
    std::vector<std::string> reports;
    for (const std::string threads : {"1", "3"}) {
        const fs::path root = d / ("t" + threads);
        const std::string ds = (root / "ds").string(), feat = (root / "feat").string();
        REQUIRE(run({"synth", "--train", "36", "--test", "12", "--out", ds, "--threads", threads}).status == 0);
        REQUIRE(run({"extract", "--manifest", ds + "/manifest.tsv", "--out", feat, "--threads", threads}).status == 0);
        REQUIRE(run({"train", "--manifest", ds + "/manifest.tsv", "--features", feat, "--epochs", "3", "--out",
                     (root / "model.json").string(), "--threads", threads})
                    .status == 0);
        const Run ev = run({"eval", "--manifest", ds + "/manifest.tsv", "--features", feat, "--model",
                            (root / "model.json").string(), "--threads", threads});
        REQUIRE(ev.status == 0);
        reports.push_back(ev.out);
    }
    CHECK(reports[0] == reports[1]);
    CHECK(io::read_file(d / "t1/model.json") == io::read_file(d / "t3/model.json"));
    CHECK(io::read_file(d / "t1/ds/manifest.tsv") == io::read_file(d / "t3/ds/manifest.tsv"));
    CHECK(io::read_file(d / "t1/feat/s00005.json") == io::read_file(d / "t3/feat/s00005.json"));

    // vocabulary flags must agree with the dataset's label map
    CHECK(run({"extract", "--manifest", (d / "t1/ds/manifest.tsv").string(), "--seg-categories", "5", "--out",
               (d / "x").string()})
              .status == 1);
}

TEST_CASE("two-step training with external global vectors") {
    const fs::path d = dir("two_step");
    const std::string ds = (d / "ds").string(), feat = (d / "feat").string();
    REQUIRE(run({"synth", "--train", "24", "--test", "12", "--out", ds}).status == 0);
    fs::create_directories(d / "global");
    for (const auto& e : synth::read_manifest(d / "ds" / "manifest.tsv")) {
        io::write_file(d / "global" / (e.id + ".json"), "[" + std::to_string(e.label) + ", 0.5, \"0x1p-2\"]");
    }
    REQUIRE(run({"extract", "--manifest", ds + "/manifest.tsv", "--global-dir", (d / "global").string(), "--out", feat})
                .status == 0);
    CHECK(io::read_features(d / "feat" / "s00000.json").shape.global_dim == 3);
    const std::string model = (d / "model.json").string();
    const Run tr = run({"train", "--manifest", ds + "/manifest.tsv", "--features", feat, "--groups", "all",
                        "--two-step", "--epochs", "5", "--out", model});
    REQUIRE(tr.status == 0);
    CHECK(tr.out.find("two-step") != std::string::npos);
    CHECK(parse_model(io::read_file(model)).probe.has_value());
    const Run ev = run({"eval", "--manifest", ds + "/manifest.tsv", "--features", feat, "--model", model});
    CHECK(ev.status == 0);
    CHECK(ev.out.find("mode=two-step") != std::string::npos);
}
