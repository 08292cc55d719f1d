#include "cli.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "semfeat/classifier.hpp"
#include "semfeat/error.hpp"
#include "semfeat/extract.hpp"
#include "semfeat/invariance.hpp"
#include "semfeat/io.hpp"
#include "semfeat/moments.hpp"
#include "semfeat/parallel.hpp"
#include "semfeat/reference.hpp"
#include "semfeat/rng.hpp"
#include "semfeat/ssf.hpp"
#include "semfeat/synth.hpp"

namespace semfeat::cli {

namespace fs = std::filesystem;

namespace {

/// Flags shared by the subcommands; only the numeric settings are echoed into outputs,
/// so artifacts do not depend on paths or on the thread count.
struct RunConfig {
    std::string labels;
    int seg_categories = 0;
    int obj_categories = 0;
    int bins = 3;
    double rho = 3.0;
    double conf_threshold = 0.2;
    std::uint64_t seed = 7;
    int threads = 1;
    std::string out;
};

void add_threads(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--threads", cfg.threads, "Worker threads (env SEMFEAT_THREADS)")
        ->envname("SEMFEAT_THREADS")
        ->check(CLI::Range(1, 1024));
}

void add_vocabulary(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--labels", cfg.labels, "Label map (semfeat.labels/1)");
    cmd->add_option("--seg-categories", cfg.seg_categories, "Segmentation vocabulary size L")->check(CLI::Range(1, 65535));
    cmd->add_option("--obj-categories", cfg.obj_categories, "Object vocabulary size N")->check(CLI::Range(1, 65535));
}

void add_object_params(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--bins", cfg.bins, "SFM distance bins K")->check(CLI::Range(1, 1024));
    cmd->add_option("--rho", cfg.rho, "SFM distance scale");
    cmd->add_option("--conf-threshold", cfg.conf_threshold, "Drop detections below this confidence");
}

std::string real(double v) { return fmt::format("{}", v); }

std::map<std::string, std::string> echo(const RunConfig& cfg, int seg, int obj) {
    return {
        {"seg_categories", std::to_string(seg)},
        {"obj_categories", std::to_string(obj)},
        {"bins", std::to_string(cfg.bins)},
        {"rho", real(cfg.rho)},
        {"conf_threshold", real(cfg.conf_threshold)},
        {"seed", std::to_string(cfg.seed)},
    };
}

/// Output goes to --out when given, otherwise to `out`.
void emit(const RunConfig& cfg, std::string_view text, std::ostream& out) {
    if (cfg.out.empty()) {
        out << text;
    } else {
        io::write_file(cfg.out, text);
    }
}

struct Vocabulary {
    std::optional<LabelMap> labels;
    int seg = 0;
    int obj = 0;

    const LabelMap* map() const { return labels ? &*labels : nullptr; }
};

/// Resolves L and N from --labels and the explicit flags; they must agree when both are given.
Vocabulary resolve_vocabulary(const RunConfig& cfg, const fs::path& fallback_labels = {}) {
    Vocabulary v;
    if (!cfg.labels.empty()) {
        v.labels = io::load_labels(cfg.labels);
    } else if (!fallback_labels.empty() && fs::exists(fallback_labels)) {
        v.labels = io::load_labels(fallback_labels);
    }
    v.seg = cfg.seg_categories;
    v.obj = cfg.obj_categories;
    if (v.labels) {
        if (v.seg && v.seg != v.labels->seg_categories())
            throw ConfigError(fmt::format("--seg-categories {} disagrees with the label map ({})", v.seg,
                                          v.labels->seg_categories()));
        if (v.obj && v.obj != v.labels->obj_categories())
            throw ConfigError(fmt::format("--obj-categories {} disagrees with the label map ({})", v.obj,
                                          v.labels->obj_categories()));
        if (!v.seg) v.seg = v.labels->seg_categories();
        if (!v.obj) v.obj = v.labels->obj_categories();
    }
    return v;
}

std::vector<double> load_global(const fs::path& path) {
    const std::string text = io::read_file(path);
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw IoError(fmt::format("{}: invalid document: {}", path.string(), e.what()));
    }
    if (!doc.is_array()) throw IoError(fmt::format("{}: global vector must be an array", path.string()));
    std::vector<double> values;
    for (const auto& v : doc) {
        if (v.is_number()) {
            values.push_back(v.get<double>());
        } else if (v.is_string()) {
            values.push_back(io::parse_hex(v.get<std::string>()));
        } else {
            throw IoError(fmt::format("{}: global entries must be numbers or hex strings", path.string()));
        }
    }
    return values;
}

struct ExtractInputs {
    std::optional<fs::path> mask;
    std::optional<fs::path> detections;
    std::optional<fs::path> global;
};

struct ExtractResult {
    io::FeatureFile file;
    std::size_t dropped = 0;
    std::vector<std::string> warnings;
};

ExtractResult extract_one(const RunConfig& cfg, const Vocabulary& vocab, const ExtractInputs& in) {
    if (!in.mask && !in.detections) throw ConfigError("nothing to extract: give a mask and/or detections");
    ExtractResult r;
    std::optional<SegmentationMask> mask;
    std::optional<DetectionSet> dets;
    if (in.mask) {
        if (vocab.seg < 1) throw ConfigError("--seg-categories or --labels is required to load a mask");
        mask = io::load_mask(*in.mask, vocab.seg);
    }
    if (in.detections) {
        io::DetectionLoad load = io::load_detections(*in.detections, cfg.conf_threshold, vocab.map());
        if (vocab.obj && load.detections.categories() != vocab.obj) {
            throw ConfigError(fmt::format("{}: file declares {} object categories, expected {}",
                                          in.detections->string(), load.detections.categories(), vocab.obj));
        }
        if (mask && (load.detections.image_width() != mask->width() || load.detections.image_height() != mask->height())) {
            throw ValidationError(fmt::format("{}: image size {}x{} differs from the mask ({}x{})",
                                              in.detections->string(), load.detections.image_width(),
                                              load.detections.image_height(), mask->width(), mask->height()));
        }
        r.dropped = load.dropped;
        r.warnings = std::move(load.warnings);
        dets = std::move(load.detections);
    }
    const SfmParams params{cfg.bins, cfg.rho};
    r.file.features = extract_all(mask ? &*mask : nullptr, dets ? &*dets : nullptr, params);
    if (in.global) r.file.features.global = load_global(*in.global);

    const int seg = mask ? mask->categories() : vocab.seg;
    const int obj = dets ? dets->categories() : vocab.obj;
    r.file.shape = FeatureShape{seg, obj, cfg.bins,
                                r.file.features.global ? static_cast<int>(r.file.features.global->size()) : 0};
    r.file.info.rho = cfg.rho;
    r.file.info.confidence_threshold = cfg.conf_threshold;
    r.file.info.config = echo(cfg, seg, obj);
    return r;
}

// ---------------------------------------------------------------------------

struct ExtractArgs {
    RunConfig cfg;
    std::string mask, detections, global, manifest, global_dir;
};

int cmd_extract(ExtractArgs& a, std::ostream& out, std::ostream& err) {
    if (a.manifest.empty()) {
        const Vocabulary vocab = resolve_vocabulary(a.cfg);
        ExtractInputs in;
        if (!a.mask.empty()) in.mask = a.mask;
        if (!a.detections.empty()) in.detections = a.detections;
        if (!a.global.empty()) in.global = a.global;
        ExtractResult r = extract_one(a.cfg, vocab, in);
        for (const auto& w : r.warnings) err << "warning: " << w << '\n';
        if (r.dropped) err << fmt::format("dropped {} detections below confidence {}\n", r.dropped, a.cfg.conf_threshold);
        emit(a.cfg, io::encode_features(r.file), out);
        return kExitOk;
    }

    if (a.cfg.out.empty()) throw ConfigError("batch extraction needs --out DIR");
    const fs::path manifest(a.manifest);
    const fs::path base = manifest.parent_path();
    const Vocabulary vocab = resolve_vocabulary(a.cfg, base / "labels.json");
    const std::vector<synth::ManifestEntry> entries = synth::read_manifest(manifest);
    const fs::path out_dir(a.cfg.out);
    fs::create_directories(out_dir);

    std::vector<std::size_t> dropped(entries.size(), 0);
    std::vector<std::size_t> warnings(entries.size(), 0);
    parallel_for(entries.size(), a.cfg.threads, [&](std::size_t i) {
        const synth::ManifestEntry& e = entries[i];
        try {
            ExtractInputs in{base / e.mask_path, base / e.detections_path, std::nullopt};
            if (!a.global_dir.empty()) in.global = fs::path(a.global_dir) / (e.id + ".json");
            ExtractResult r = extract_one(a.cfg, vocab, in);
            dropped[i] = r.dropped;
            warnings[i] = r.warnings.size();
            io::write_features(r.file, out_dir / (e.id + ".json"));
        } catch (const Error& ex) {
            throw Error(fmt::format("sample {}: {}", e.id, ex.what()));
        }
    });
    std::size_t total_dropped = 0, total_warnings = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        total_dropped += dropped[i];
        total_warnings += warnings[i];
    }
    out << fmt::format("extracted {} samples; dropped {} detections below confidence {}; {} load warnings\n",
                       entries.size(), total_dropped, a.cfg.conf_threshold, total_warnings);
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct InvarianceArgs {
    RunConfig cfg;
    std::string mask;
    int scale = 4;
    double angle_degrees = 30.0;
};

const char* kind_name(InvarianceKind k) {
    switch (k) {
        case InvarianceKind::exact: return "exact";
        case InvarianceKind::reflection: return "reflection";
        case InvarianceKind::scale: return "scale";
        case InvarianceKind::rotation: return "rotation";
    }
    return "?";
}

int cmd_invariance(InvarianceArgs& a, std::ostream& out, std::ostream&) {
    const Vocabulary vocab = resolve_vocabulary(a.cfg);
    if (vocab.seg < 1) throw ConfigError("--seg-categories or --labels is required to load a mask");
    const SegmentationMask mask = pad_for_battery(io::load_mask(a.mask, vocab.seg));
    const double radians = a.angle_degrees * std::numbers::pi / 180.0;

    std::string report = fmt::format("# semfeat.invariance/1\n# config: seg_categories={} scale={} angle_degrees={}\n# frame: {}x{}\n",
                                     vocab.seg, a.scale, real(a.angle_degrees), mask.width(), mask.height());
    report += "transform\tkind\tcompared\tmax_delta\ttolerance\tshare_delta\th7_sign_flips\tstatus\n";
    bool ok = true;
    for (const synth::MaskTransform& t : default_battery(mask, a.scale, radians)) {
        const TransformCheck c = check_transform(mask, t);
        ok = ok && c.passed;
        const std::string flips =
            c.kind == InvarianceKind::reflection ? fmt::format("{}/{}", c.sign_flips, c.sign_checks) : "-";
        report += fmt::format("{}\t{}\t{}\t{:.3e}\t{:g}\t{:.3e}\t{}\t{}\n", c.name, kind_name(c.kind), c.compared,
                              c.max_delta, c.tolerance, c.max_ssf_delta, flips, c.passed ? "PASS" : "FAIL");
    }
    report += fmt::format("result\t{}\n", ok ? "PASS" : "FAIL");
    emit(a.cfg, report, out);
    if (!a.cfg.out.empty()) out << report;
    return ok ? kExitOk : kExitTolerance;
}

// ---------------------------------------------------------------------------

struct BenchArgs {
    RunConfig cfg;
    int size = 224;
    int samples = 8;
    int repeats = 3;
    std::string manifest;
};

/// One randomly placed shape per category over a void background.
SegmentationMask bench_mask(int size, int categories, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<std::pair<synth::Shape, CategoryIndex>> shapes;
    for (int n = 1; n <= categories; ++n) {
        synth::Shape s;
        s.family = static_cast<synth::ShapeFamily>(rng.uniform_int(0, 2));
        s.center_x = rng.uniform(0, size);
        s.center_y = rng.uniform(0, size);
        s.half_width = rng.uniform(0.05, 0.3) * size;
        s.half_height = rng.uniform(0.05, 0.3) * size;
        s.angle = rng.uniform(0, 2 * std::numbers::pi);
        shapes.emplace_back(s, static_cast<CategoryIndex>(n));
    }
    return synth::render(size, size, categories, shapes);
}

int cmd_bench(BenchArgs& a, std::ostream& out, std::ostream&) {
    using clock = std::chrono::steady_clock;
    if (a.repeats < 1) throw ConfigError("--repeats must be positive");
    std::vector<SegmentationMask> corpus;
    int categories = a.cfg.seg_categories ? a.cfg.seg_categories : 37;
    if (!a.manifest.empty()) {
        const fs::path manifest(a.manifest);
        RunConfig probe = a.cfg;
        const Vocabulary vocab = resolve_vocabulary(probe, manifest.parent_path() / "labels.json");
        if (vocab.seg < 1) throw ConfigError("--seg-categories or --labels is required to load masks");
        categories = vocab.seg;
        for (const auto& e : synth::read_manifest(manifest))
            corpus.push_back(io::load_mask(manifest.parent_path() / e.mask_path, categories));
    } else {
        if (a.size < 1) throw ConfigError("--size must be positive");
        for (int i = 0; i < a.samples; ++i)
            corpus.push_back(bench_mask(a.size, categories, derive_seed(a.cfg.seed, static_cast<std::uint64_t>(i))));
    }
    if (corpus.empty()) throw ConfigError("benchmark corpus is empty");

    double pixels = 0;
    for (const auto& m : corpus) pixels += static_cast<double>(m.size());
    pixels *= a.repeats;

    // Both paths finish with the same derivation and feature assembly; only the accumulation differs.
    std::atomic<double> sink{0};
    const auto consume = [&sink](const MomentSet& moments) {
        const ShmfMatrix h = shmf(moments);
        const SsfMatrix s = ssf(moments);
        sink = sink + h.row(1)[0] + s.row(1)[0];
    };
    const auto t0 = clock::now();
    for (int r = 0; r < a.repeats; ++r)
        for (const auto& m : corpus) consume(compute_moments(m));
    const auto t1 = clock::now();
    for (int r = 0; r < a.repeats; ++r)
        for (const auto& m : corpus) consume(derive_moments(reference::multipass_raw_moments(m)));
    const auto t2 = clock::now();

    for (const auto& m : corpus) {
        const MomentSet x = accumulate_raw_moments(m), y = reference::multipass_raw_moments(m);
        for (int n = 1; n <= m.categories(); ++n) {
            if (x.category(n).raw != y.category(n).raw)
                throw Error(fmt::format("single-pass and multi-pass moments disagree for category {}", n));
        }
    }

    const double single = pixels / 1e6 / std::chrono::duration<double>(t1 - t0).count();
    const double multi = pixels / 1e6 / std::chrono::duration<double>(t2 - t1).count();
    const double ratio = single / multi;
    const bool asserted = categories >= 8;
    const bool ok = !asserted || ratio >= 3.0;

    std::string report = fmt::format("# semfeat.bench/1\n# config: seg_categories={} masks={} repeats={} seed={}\n",
                                     categories, corpus.size(), a.repeats, a.cfg.seed);
    report += fmt::format("megapixels\t{:.3f}\n", pixels / 1e6);
    report += fmt::format("single_pass_mpix_per_s\t{:.2f}\n", single);
    report += fmt::format("multi_pass_mpix_per_s\t{:.2f}\n", multi);
    report += fmt::format("speedup\t{:.2f}\n", ratio);
    report += fmt::format("assertion\t{}\n", asserted ? (ok ? "speedup >= 3: PASS" : "speedup >= 3: FAIL")
                                                      : "suspended (fewer than 8 categories)");
    emit(a.cfg, report, out);
    if (!a.cfg.out.empty()) out << report;
    return ok ? kExitOk : kExitTolerance;
}

// ---------------------------------------------------------------------------

struct SynthArgs {
    RunConfig cfg;
    int train = 600;
    int test = 200;
};

int cmd_synth(SynthArgs& a, std::ostream& out, std::ostream&) {
    if (a.cfg.out.empty()) throw ConfigError("synth needs --out DIR");
    synth::DatasetConfig config = synth::default_dataset_config();
    config.seed = a.cfg.seed;
    config.train_samples = a.train;
    config.test_samples = a.test;
    const auto entries = synth::generate_dataset(config, a.cfg.out, a.cfg.threads);
    std::size_t occluded = 0;
    for (const auto& e : entries) occluded += e.occluded.size();
    out << fmt::format("generated {} samples ({} train, {} test, {} classes); {} fully occluded detections\n",
                       entries.size(), a.train, a.test, config.templates.size(), occluded);
    return kExitOk;
}

// ---------------------------------------------------------------------------

std::vector<LabeledBundle> load_split(const fs::path& manifest, const fs::path& features, const std::string& split,
                                      int threads) {
    std::vector<synth::ManifestEntry> entries;
    for (auto& e : synth::read_manifest(manifest))
        if (e.split == split) entries.push_back(std::move(e));
    if (entries.empty()) throw ConfigError(fmt::format("{}: no '{}' samples", manifest.string(), split));
    std::vector<LabeledBundle> out(entries.size());
    parallel_for(entries.size(), threads, [&](std::size_t i) {
        try {
            const io::FeatureFile f = io::read_features(features / (entries[i].id + ".json"));
            out[i] = LabeledBundle{f.features.to_bundle(), entries[i].label};
        } catch (const Error& ex) {
            throw Error(fmt::format("sample {}: {}", entries[i].id, ex.what()));
        }
    });
    return out;
}

struct TrainArgs {
    RunConfig cfg;
    std::string manifest, features, groups = "sb+ob";
    TrainConfig train;
};

int cmd_train(TrainArgs& a, std::ostream& out, std::ostream&) {
    if (a.cfg.out.empty()) throw ConfigError("train needs --out MODEL");
    a.train.selection = FeatureSelection::parse(a.groups);
    a.train.seed = a.cfg.seed;
    const auto data = load_split(a.manifest, a.features, "train", a.cfg.threads);
    const ClassifierModel model = semfeat::train(data, a.train);
    io::write_file(a.cfg.out, encode_model(model));
    const EvalReport fit = evaluate(model, data, a.cfg.threads);
    out << fmt::format("trained on {} samples ({} classes, groups {}, {}); training accuracy {:.6f}\n", data.size(),
                       model.classes, a.train.selection.to_string(), model.probe ? "two-step" : "joint", fit.accuracy);
    return kExitOk;
}

struct EvalArgs {
    RunConfig cfg;
    std::string manifest, features, model, split = "test";
};

int cmd_eval(EvalArgs& a, std::ostream& out, std::ostream&) {
    const ClassifierModel model = parse_model(io::read_file(a.model), a.model);
    const auto data = load_split(a.manifest, a.features, a.split, a.cfg.threads);
    const EvalReport report = evaluate(model, data, a.cfg.threads);
    const std::string text = format_report(
        report, {}, fmt::format("groups={} mode={} split={}", model.config.selection.to_string(),
                                model.probe ? "two-step" : "joint", a.split));
    emit(a.cfg, text, out);
    if (!a.cfg.out.empty()) out << text;
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Semantic feature extraction, invariance checks and scene classification"};
    app.name("semfeat");
    app.require_subcommand(1);

    ExtractArgs ex;
    auto* extract = app.add_subcommand("extract", "Compute SHMF/SSF from a mask and SFV/SFM from detections");
    extract->add_option("--mask", ex.mask, "Segmentation mask (PGM)");
    extract->add_option("--detections", ex.detections, "Detections (semfeat.detections/1)");
    extract->add_option("--global", ex.global, "External global embedding (JSON array)");
    extract->add_option("--manifest", ex.manifest, "Batch mode: dataset manifest; writes <out>/<id>.json");
    extract->add_option("--global-dir", ex.global_dir, "Batch mode: directory of <id>.json global embeddings");
    add_vocabulary(extract, ex.cfg);
    add_object_params(extract, ex.cfg);
    extract->add_option("--seed", ex.cfg.seed, "Seed echoed into the output");
    add_threads(extract, ex.cfg);
    extract->add_option("--out", ex.cfg.out, "Output file (single) or directory (batch)");

    InvarianceArgs inv;
    auto* invariance = app.add_subcommand("invariance", "Check SHMF invariance under the transform battery");
    invariance->add_option("--mask", inv.mask, "Segmentation mask (PGM)")->required();
    add_vocabulary(invariance, inv.cfg);
    invariance->add_option("--scale", inv.scale, "Pixel replication factor")->check(CLI::Range(1, 64));
    invariance->add_option("--angle", inv.angle_degrees, "Arbitrary rotation angle in degrees");
    invariance->add_option("--out", inv.cfg.out, "Report file");

    BenchArgs bn;
    bn.cfg.seg_categories = 37;
    auto* bench = app.add_subcommand("bench", "Throughput of single-pass vs per-category extraction");
    add_vocabulary(bench, bn.cfg);
    bench->add_option("--size", bn.size, "Side of generated square masks");
    bench->add_option("--samples", bn.samples, "Generated masks")->check(CLI::Range(0, 1 << 20));
    bench->add_option("--repeats", bn.repeats, "Passes over the corpus");
    bench->add_option("--manifest", bn.manifest, "Use the masks of a dataset manifest instead");
    bench->add_option("--seed", bn.cfg.seed, "Corpus seed");
    bench->add_option("--out", bn.cfg.out, "Report file");

    SynthArgs sy;
    auto* synth_cmd = app.add_subcommand("synth", "Generate the seeded synthetic benchmark");
    synth_cmd->add_option("--train", sy.train, "Training samples")->check(CLI::Range(0, 1 << 24));
    synth_cmd->add_option("--test", sy.test, "Held-out samples")->check(CLI::Range(0, 1 << 24));
    synth_cmd->add_option("--seed", sy.cfg.seed, "Dataset seed");
    add_threads(synth_cmd, sy.cfg);
    synth_cmd->add_option("--out", sy.cfg.out, "Output directory")->required();

    TrainArgs tr;
    tr.cfg.seed = 1;
    auto* train_cmd = app.add_subcommand("train", "Train the fusion classifier on extracted features");
    train_cmd->add_option("--manifest", tr.manifest, "Dataset manifest")->required();
    train_cmd->add_option("--features", tr.features, "Directory of <id>.json feature files")->required();
    train_cmd->add_option("--groups", tr.groups, "Feature groups, e.g. sb, ob, sb+ob, all");
    train_cmd->add_flag("--two-step", tr.train.two_step, "Train a global probe first, then freeze it");
    train_cmd->add_option("--epochs", tr.train.epochs, "Epochs")->check(CLI::Range(0, 100000));
    train_cmd->add_option("--lr", tr.train.learning_rate, "SGD learning rate");
    train_cmd->add_option("--batch-size", tr.train.batch_size, "Minibatch size")->check(CLI::Range(1, 1 << 20));
    train_cmd->add_option("--hidden1", tr.train.hidden1, "First hidden layer width")->check(CLI::Range(1, 1 << 16));
    train_cmd->add_option("--hidden2", tr.train.hidden2, "Second hidden layer width")->check(CLI::Range(1, 1 << 16));
    train_cmd->add_option("--seed", tr.cfg.seed, "Initialization and shuffling seed");
    add_threads(train_cmd, tr.cfg);
    train_cmd->add_option("--out", tr.cfg.out, "Model file")->required();

    EvalArgs ev;
    auto* eval_cmd = app.add_subcommand("eval", "Evaluate a trained model");
    eval_cmd->add_option("--manifest", ev.manifest, "Dataset manifest")->required();
    eval_cmd->add_option("--features", ev.features, "Directory of <id>.json feature files")->required();
    eval_cmd->add_option("--model", ev.model, "Model file")->required();
    eval_cmd->add_option("--split", ev.split, "Split to evaluate")->check(CLI::IsMember({"train", "test"}));
    add_threads(eval_cmd, ev.cfg);
    eval_cmd->add_option("--out", ev.cfg.out, "Report file");

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }

    try {
        if (extract->parsed()) return cmd_extract(ex, out, err);
        if (invariance->parsed()) return cmd_invariance(inv, out, err);
        if (bench->parsed()) return cmd_bench(bn, out, err);
        if (synth_cmd->parsed()) return cmd_synth(sy, out, err);
        if (train_cmd->parsed()) return cmd_train(tr, out, err);
        if (eval_cmd->parsed()) return cmd_eval(ev, out, err);
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

}  // namespace semfeat::cli
