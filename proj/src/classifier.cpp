#include "semfeat/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "semfeat/error.hpp"
#include "semfeat/io.hpp"
#include "semfeat/parallel.hpp"
#include "semfeat/rng.hpp"

namespace semfeat {

using nlohmann::json;

FeatureBundle build_bundle(const FeatureShape& shape, ShmfMatrix shmf, SsfMatrix ssf, Sfv sfv, Sfm sfm,
                           std::optional<std::vector<double>> global) {
    const auto mismatch = [](const char* block, const std::string& detail) {
        return ConfigError(fmt::format("block '{}' does not match the dataset shape: {}", block, detail));
    };
    if (shmf.categories() != shape.seg_categories)
        throw mismatch("shmf", fmt::format("{} rows, expected {}", shmf.categories(), shape.seg_categories));
    if (ssf.categories() != shape.seg_categories)
        throw mismatch("ssf", fmt::format("{} rows, expected {}", ssf.categories(), shape.seg_categories));
    if (sfv.categories() != shape.obj_categories)
        throw mismatch("sfv", fmt::format("{} entries, expected {}", sfv.categories(), shape.obj_categories));
    if (sfm.categories() != shape.obj_categories || sfm.bins() != shape.bins) {
        throw mismatch("sfm", fmt::format("{}x{}x{}, expected {}x{}x{}", sfm.categories(), sfm.categories(),
                                          sfm.bins(), shape.obj_categories, shape.obj_categories, shape.bins));
    }
    const int g = global ? static_cast<int>(global->size()) : 0;
    if (g != shape.global_dim)
        throw mismatch("global", fmt::format("{} values, expected {}", g, shape.global_dim));
    return FeatureBundle{std::move(shmf), std::move(ssf), std::move(sfv), std::move(sfm), std::move(global)};
}

// ---------------------------------------------------------------------------
// Feature selection

FeatureSelection FeatureSelection::parse(std::string_view text) {
    FeatureSelection s{false, false, false, false, false};
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t end = std::min(text.find('+', start), text.size());
        const std::string_view part = text.substr(start, end - start);
        if (part == "sb") {
            s.shmf = s.ssf = true;
        } else if (part == "ob") {
            s.sfv = s.sfm = true;
        } else if (part == "shmf") {
            s.shmf = true;
        } else if (part == "ssf") {
            s.ssf = true;
        } else if (part == "sfv") {
            s.sfv = true;
        } else if (part == "sfm") {
            s.sfm = true;
        } else if (part == "global") {
            s.global = true;
        } else if (part == "all") {
            s = all();
        } else {
            throw ConfigError(fmt::format("unknown feature group '{}'", part));
        }
        start = end + 1;
    }
    return s;
}

std::string FeatureSelection::to_string() const {
    std::string out;
    const auto add = [&out](bool on, const char* name) {
        if (!on) return;
        if (!out.empty()) out += '+';
        out += name;
    };
    add(shmf, "shmf");
    add(ssf, "ssf");
    add(sfv, "sfv");
    add(sfm, "sfm");
    add(global, "global");
    return out.empty() ? "none" : out;
}

// ---------------------------------------------------------------------------
// Standardization

Standardizer Standardizer::fit(std::span<const std::vector<double>> rows, std::size_t dims) {
    Standardizer s;
    s.mean.assign(dims, 0.0);
    s.stddev.assign(dims, 1.0);
    if (rows.empty()) return s;
    const double n = static_cast<double>(rows.size());
    for (const auto& r : rows)
        for (std::size_t d = 0; d < dims; ++d) s.mean[d] += r[d];
    for (auto& m : s.mean) m /= n;
    std::vector<double> var(dims, 0.0);
    for (const auto& r : rows) {
        for (std::size_t d = 0; d < dims; ++d) {
            const double diff = r[d] - s.mean[d];
            var[d] += diff * diff;
        }
    }
    for (std::size_t d = 0; d < dims; ++d) {
        const double sd = std::sqrt(var[d] / n);
        s.stddev[d] = sd < kMinStddev ? 1.0 : sd;
    }
    return s;
}

void Standardizer::apply(std::vector<double>& values) const {
    if (values.size() != mean.size()) {
        throw ConfigError(fmt::format("standardizer expects {} values, got {}", mean.size(), values.size()));
    }
    for (std::size_t d = 0; d < values.size(); ++d) values[d] = (values[d] - mean[d]) / stddev[d];
}

// ---------------------------------------------------------------------------
// Model

namespace {

int semantic_width(const FeatureShape& shape, const FeatureSelection& sel, bool include_global) {
    std::size_t d = 0;
    if (sel.shmf) d += shape.shmf_size();
    if (sel.ssf) d += shape.ssf_size();
    if (sel.sfv) d += shape.sfv_size();
    if (sel.sfm) d += shape.sfm_size();
    if (include_global) d += static_cast<std::size_t>(shape.global_dim);
    return static_cast<int>(d);
}

void he_uniform(DenseLayer& layer, Rng& rng) {
    const double limit = std::sqrt(6.0 / std::max(layer.inputs, 1));
    for (auto& w : layer.weights) w = rng.uniform(-limit, limit);
}

}  // namespace

ClassifierModel ClassifierModel::initialize(const FeatureShape& shape, int classes, const TrainConfig& config) {
    if (classes < 2) throw TrainingError(fmt::format("need at least two classes, got {}", classes));
    if (config.hidden1 < 1 || config.hidden2 < 1) throw ConfigError("hidden layer sizes must be positive");
    ClassifierModel m;
    m.shape = shape;
    m.config = config;
    m.classes = classes;
    const bool use_probe = config.two_step && config.selection.global && shape.global_dim > 0;
    const int inputs = semantic_width(shape, config.selection, config.selection.global && !use_probe);
    if (inputs < 1) throw ConfigError("feature selection leaves no classifier inputs");

    Rng rng(config.seed);
    m.hidden1 = DenseLayer(inputs, config.hidden1);
    m.hidden2 = DenseLayer(config.hidden1, config.hidden2);
    he_uniform(m.hidden1, rng);
    he_uniform(m.hidden2, rng);
    m.output = DenseLayer(config.hidden2 + (use_probe ? classes : 0), classes);
    if (use_probe) m.probe = DenseLayer(shape.global_dim, classes);
    m.semantic_norm.mean.assign(static_cast<std::size_t>(inputs), 0.0);
    m.semantic_norm.stddev.assign(static_cast<std::size_t>(inputs), 1.0);
    m.global_norm.mean.assign(use_probe ? static_cast<std::size_t>(shape.global_dim) : 0, 0.0);
    m.global_norm.stddev.assign(use_probe ? static_cast<std::size_t>(shape.global_dim) : 0, 1.0);
    return m;
}

ModelInput ClassifierModel::prepare(const FeatureBundle& bundle) const {
    const FeatureShape got = bundle.shape();
    if (!(got == shape)) {
        throw ConfigError(fmt::format("bundle shape (L={}, N={}, K={}, G={}) does not match model (L={}, N={}, K={}, G={})",
                                      got.seg_categories, got.obj_categories, got.bins, got.global_dim,
                                      shape.seg_categories, shape.obj_categories, shape.bins, shape.global_dim));
    }
    const FeatureSelection& sel = config.selection;
    ModelInput in;
    in.semantic.reserve(static_cast<std::size_t>(semantic_dims()));
    if (sel.shmf)
        for (const auto& r : bundle.shmf.rows()) in.semantic.insert(in.semantic.end(), r.begin(), r.end());
    if (sel.ssf)
        for (const auto& r : bundle.ssf.rows()) in.semantic.insert(in.semantic.end(), r.begin(), r.end());
    if (sel.sfv)
        for (auto c : bundle.sfv.counts()) in.semantic.push_back(static_cast<double>(c));
    if (sel.sfm)
        for (auto b : bundle.sfm.values()) in.semantic.push_back(static_cast<double>(b));
    if (bundle.global) {
        if (global_in_semantic()) in.semantic.insert(in.semantic.end(), bundle.global->begin(), bundle.global->end());
        if (probe) in.global = *bundle.global;
    }
    return in;
}

void ClassifierModel::standardize(ModelInput& input) const {
    if (input.standardized) throw std::logic_error("model input is already standardized");
    semantic_norm.apply(input.semantic);
    if (probe) global_norm.apply(input.global);
    input.standardized = true;
}

// ---------------------------------------------------------------------------
// Forward / backward

namespace {

void affine(const DenseLayer& layer, std::span<const double> in, std::vector<double>& out) {
    out.assign(layer.bias.begin(), layer.bias.end());
    for (int o = 0; o < layer.outputs; ++o) {
        const double* w = &layer.weights[static_cast<std::size_t>(o) * layer.inputs];
        double acc = 0.0;
        for (int i = 0; i < layer.inputs; ++i) acc += w[i] * in[static_cast<std::size_t>(i)];
        out[static_cast<std::size_t>(o)] += acc;
    }
}

void relu(std::vector<double>& v) {
    for (auto& x : v) x = x > 0 ? x : 0.0;
}

/// In-place softmax; returns log-sum-exp of the logits.
double softmax(std::vector<double>& v) {
    const double top = *std::max_element(v.begin(), v.end());
    double sum = 0.0;
    for (auto& x : v) {
        x = std::exp(x - top);
        sum += x;
    }
    for (auto& x : v) x /= sum;
    return top + std::log(sum);
}

struct Activations {
    std::vector<double> a1;      // post-ReLU hidden1
    std::vector<double> a2;      // post-ReLU hidden2
    std::vector<double> fused;   // a2 followed by probe scores
    std::vector<double> logits;
    std::vector<double> probs;
    double log_norm = 0;
};

void run_forward(const ClassifierModel& m, const ModelInput& in, Activations& act) {
    affine(m.hidden1, in.semantic, act.a1);
    relu(act.a1);
    affine(m.hidden2, act.a1, act.a2);
    relu(act.a2);
    act.fused = act.a2;
    if (m.probe) {
        std::vector<double> scores;
        affine(*m.probe, in.global, scores);
        act.fused.insert(act.fused.end(), scores.begin(), scores.end());
    }
    affine(m.output, act.fused, act.logits);
    act.probs = act.logits;
    act.log_norm = softmax(act.probs);
}

void check_input(const ClassifierModel& m, const ModelInput& in) {
    if (!in.standardized) throw std::logic_error("model input must be standardized before the forward pass");
    if (static_cast<int>(in.semantic.size()) != m.semantic_dims()) {
        throw ConfigError(fmt::format("input has {} values, model expects {}", in.semantic.size(), m.semantic_dims()));
    }
    if (m.probe && static_cast<int>(in.global.size()) != m.probe->inputs) {
        throw ConfigError(fmt::format("global input has {} values, model expects {}", in.global.size(), m.probe->inputs));
    }
}

void zero_like(const DenseLayer& layer, DenseLayer& grad) {
    grad = DenseLayer(layer.inputs, layer.outputs);
}

// grad += scale * outer(delta, input)
void accumulate(DenseLayer& grad, std::span<const double> delta, std::span<const double> input) {
    for (int o = 0; o < grad.outputs; ++o) {
        const double d = delta[static_cast<std::size_t>(o)];
        if (d == 0.0) continue;
        double* g = &grad.weights[static_cast<std::size_t>(o) * grad.inputs];
        for (int i = 0; i < grad.inputs; ++i) g[i] += d * input[static_cast<std::size_t>(i)];
        grad.bias[static_cast<std::size_t>(o)] += d;
    }
}

// out = W^T delta
void back_project(const DenseLayer& layer, std::span<const double> delta, std::vector<double>& out) {
    out.assign(static_cast<std::size_t>(layer.inputs), 0.0);
    for (int o = 0; o < layer.outputs; ++o) {
        const double d = delta[static_cast<std::size_t>(o)];
        if (d == 0.0) continue;
        const double* w = &layer.weights[static_cast<std::size_t>(o) * layer.inputs];
        for (int i = 0; i < layer.inputs; ++i) out[static_cast<std::size_t>(i)] += w[i] * d;
    }
}

void scale_layer(DenseLayer& layer, double s) {
    for (auto& w : layer.weights) w *= s;
    for (auto& b : layer.bias) b *= s;
}

void sgd_step(DenseLayer& layer, const DenseLayer& grad, double rate) {
    for (std::size_t k = 0; k < layer.weights.size(); ++k) layer.weights[k] -= rate * grad.weights[k];
    for (std::size_t k = 0; k < layer.bias.size(); ++k) layer.bias[k] -= rate * grad.bias[k];
}

}  // namespace

std::vector<double> forward(const ClassifierModel& model, const ModelInput& input) {
    check_input(model, input);
    Activations act;
    run_forward(model, input, act);
    return act.probs;
}

double loss(const ClassifierModel& model, std::span<const Example> batch) {
    if (batch.empty()) return 0.0;
    double total = 0.0;
    Activations act;
    for (const Example& ex : batch) {
        check_input(model, ex.input);
        run_forward(model, ex.input, act);
        total += act.log_norm - act.logits[static_cast<std::size_t>(ex.label)];
    }
    return total / static_cast<double>(batch.size());
}

double loss_and_gradients(const ClassifierModel& model, std::span<const Example> batch, Gradients& grads) {
    zero_like(model.hidden1, grads.hidden1);
    zero_like(model.hidden2, grads.hidden2);
    zero_like(model.output, grads.output);
    grads.probe.reset();
    if (model.probe) {
        grads.probe.emplace();
        zero_like(*model.probe, *grads.probe);
    }
    if (batch.empty()) return 0.0;

    Activations act;
    std::vector<double> delta_out, delta_fused, delta2, delta1;
    double total = 0.0;
    const int h2 = model.hidden2.outputs;
    for (const Example& ex : batch) {
        check_input(model, ex.input);
        if (ex.label < 0 || ex.label >= model.classes) throw TrainingError(fmt::format("label {} out of range", ex.label));
        run_forward(model, ex.input, act);
        total += act.log_norm - act.logits[static_cast<std::size_t>(ex.label)];

        delta_out = act.probs;
        delta_out[static_cast<std::size_t>(ex.label)] -= 1.0;
        accumulate(grads.output, delta_out, act.fused);
        back_project(model.output, delta_out, delta_fused);

        if (model.probe) {
            const std::span<const double> probe_delta(delta_fused.data() + h2, static_cast<std::size_t>(model.classes));
            accumulate(*grads.probe, probe_delta, ex.input.global);
        }
        delta2.assign(delta_fused.begin(), delta_fused.begin() + h2);
        for (int k = 0; k < h2; ++k)
            if (act.a2[static_cast<std::size_t>(k)] <= 0.0) delta2[static_cast<std::size_t>(k)] = 0.0;
        accumulate(grads.hidden2, delta2, act.a1);
        back_project(model.hidden2, delta2, delta1);
        for (std::size_t k = 0; k < delta1.size(); ++k)
            if (act.a1[k] <= 0.0) delta1[k] = 0.0;
        accumulate(grads.hidden1, delta1, ex.input.semantic);
    }
    const double inv = 1.0 / static_cast<double>(batch.size());
    scale_layer(grads.hidden1, inv);
    scale_layer(grads.hidden2, inv);
    scale_layer(grads.output, inv);
    if (grads.probe) scale_layer(*grads.probe, inv);
    return total * inv;
}

// ---------------------------------------------------------------------------
// Training

namespace {

void check_config(const TrainConfig& c) {
    if (!(c.learning_rate > 0.0) || !std::isfinite(c.learning_rate))
        throw ConfigError(fmt::format("learning rate must be positive, got {}", c.learning_rate));
    if (c.epochs < 0) throw ConfigError(fmt::format("epoch count must be nonnegative, got {}", c.epochs));
    if (c.batch_size < 1) throw ConfigError(fmt::format("batch size must be positive, got {}", c.batch_size));
}

void shuffle(std::vector<std::size_t>& order, Rng& rng) {
    for (std::size_t i = order.size(); i > 1; --i) {
        const auto j = static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(i) - 1));
        std::swap(order[i - 1], order[j]);
    }
}

/// Softmax regression of the probe on the global block alone.
void train_probe(ClassifierModel& model, std::span<const Example> examples, Rng& rng) {
    DenseLayer& probe = *model.probe;
    std::vector<std::size_t> order(examples.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> scores;
    for (int epoch = 0; epoch < model.config.epochs; ++epoch) {
        shuffle(order, rng);
        for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(model.config.batch_size)) {
            const std::size_t stop = std::min(order.size(), start + static_cast<std::size_t>(model.config.batch_size));
            DenseLayer grad(probe.inputs, probe.outputs);
            for (std::size_t k = start; k < stop; ++k) {
                const Example& ex = examples[order[k]];
                affine(probe, ex.input.global, scores);
                softmax(scores);
                scores[static_cast<std::size_t>(ex.label)] -= 1.0;
                accumulate(grad, scores, ex.input.global);
            }
            scale_layer(grad, 1.0 / static_cast<double>(stop - start));
            sgd_step(probe, grad, model.config.learning_rate);
        }
    }
}

}  // namespace

ClassifierModel train(std::span<const LabeledBundle> dataset, const TrainConfig& config) {
    check_config(config);
    if (dataset.empty()) throw TrainingError("training set is empty");
    const FeatureShape shape = dataset.front().bundle.shape();
    std::set<int> labels;
    for (std::size_t k = 0; k < dataset.size(); ++k) {
        if (!(dataset[k].bundle.shape() == shape)) {
            throw TrainingError(fmt::format("sample {} has a different feature shape than sample 0", k));
        }
        if (dataset[k].label < 0) throw TrainingError(fmt::format("sample {} has negative label {}", k, dataset[k].label));
        labels.insert(dataset[k].label);
    }
    if (labels.size() < 2) throw TrainingError("training set contains a single class");

    ClassifierModel model = ClassifierModel::initialize(shape, *labels.rbegin() + 1, config);

    std::vector<Example> examples;
    examples.reserve(dataset.size());
    for (const LabeledBundle& lb : dataset) examples.push_back({model.prepare(lb.bundle), lb.label});

    std::vector<std::vector<double>> rows;
    rows.reserve(examples.size());
    for (const Example& ex : examples) rows.push_back(ex.input.semantic);
    model.semantic_norm = Standardizer::fit(rows, static_cast<std::size_t>(model.semantic_dims()));
    if (model.probe) {
        rows.clear();
        for (const Example& ex : examples) rows.push_back(ex.input.global);
        model.global_norm = Standardizer::fit(rows, static_cast<std::size_t>(shape.global_dim));
    }
    for (Example& ex : examples) model.standardize(ex.input);

    Rng rng(mix_seed(config.seed ^ 0x5eedf00dULL));
    if (model.probe) train_probe(model, examples, rng);

    // Second step (or the only one): the probe, if any, stays frozen.
    std::vector<std::size_t> order(examples.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<Example> batch;
    Gradients grads;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        shuffle(order, rng);
        for (std::size_t start = 0; start < order.size(); start += static_cast<std::size_t>(config.batch_size)) {
            const std::size_t stop = std::min(order.size(), start + static_cast<std::size_t>(config.batch_size));
            batch.clear();
            for (std::size_t k = start; k < stop; ++k) batch.push_back(examples[order[k]]);
            const double value = loss_and_gradients(model, batch, grads);
            if (!std::isfinite(value)) throw TrainingError(fmt::format("loss diverged in epoch {}", epoch));
            sgd_step(model.hidden1, grads.hidden1, config.learning_rate);
            sgd_step(model.hidden2, grads.hidden2, config.learning_rate);
            sgd_step(model.output, grads.output, config.learning_rate);
        }
    }
    return model;
}

// ---------------------------------------------------------------------------
// Prediction and evaluation

Prediction predict(const ClassifierModel& model, const FeatureBundle& bundle) {
    ModelInput in = model.prepare(bundle);
    model.standardize(in);
    Prediction p;
    p.probabilities = forward(model, in);
    p.label = static_cast<int>(std::max_element(p.probabilities.begin(), p.probabilities.end()) -
                               p.probabilities.begin());
    return p;
}

EvalReport tally(std::span<const int> truth, std::span<const int> predicted, int classes) {
    if (truth.empty()) throw TrainingError("evaluation set is empty");
    if (truth.size() != predicted.size()) throw std::invalid_argument("truth and predictions differ in length");
    EvalReport r;
    r.total = truth.size();
    r.confusion.assign(static_cast<std::size_t>(classes), std::vector<std::uint64_t>(static_cast<std::size_t>(classes), 0));
    for (std::size_t k = 0; k < truth.size(); ++k) {
        if (truth[k] < 0 || truth[k] >= classes || predicted[k] < 0 || predicted[k] >= classes) {
            throw TrainingError(fmt::format("sample {}: label outside [0, {})", k, classes));
        }
        ++r.confusion[static_cast<std::size_t>(truth[k])][static_cast<std::size_t>(predicted[k])];
    }
    std::uint64_t trace = 0;
    r.recall.assign(static_cast<std::size_t>(classes), 0.0);
    for (std::size_t c = 0; c < r.confusion.size(); ++c) {
        trace += r.confusion[c][c];
        const auto row = std::accumulate(r.confusion[c].begin(), r.confusion[c].end(), std::uint64_t{0});
        if (row) r.recall[c] = static_cast<double>(r.confusion[c][c]) / static_cast<double>(row);
    }
    r.accuracy = static_cast<double>(trace) / static_cast<double>(r.total);
    r.predictions.assign(predicted.begin(), predicted.end());
    return r;
}

EvalReport evaluate(const ClassifierModel& model, std::span<const LabeledBundle> dataset, int threads) {
    if (dataset.empty()) throw TrainingError("evaluation set is empty");
    std::vector<int> truth(dataset.size());
    std::vector<int> predicted(dataset.size());
    parallel_for(dataset.size(), threads, [&](std::size_t k) {
        truth[k] = dataset[k].label;
        predicted[k] = predict(model, dataset[k].bundle).label;
    });
    return tally(truth, predicted, model.classes);
}

std::string format_report(const EvalReport& report, std::span<const std::string> class_names, std::string_view header) {
    const std::size_t classes = report.confusion.size();
    std::string out = "# semfeat.eval/1\n";
    if (!header.empty()) out += fmt::format("# {}\n", header);
    out += fmt::format("samples\t{}\naccuracy\t{:.6f}\n", report.total, report.accuracy);
    out += "confusion\ttrue\\pred";
    for (std::size_t c = 0; c < classes; ++c) out += fmt::format("\t{}", c);
    out += '\n';
    for (std::size_t t = 0; t < classes; ++t) {
        out += fmt::format("confusion\t{}", t);
        for (std::size_t p = 0; p < classes; ++p) out += fmt::format("\t{}", report.confusion[t][p]);
        out += '\n';
    }
    for (std::size_t c = 0; c < classes; ++c) {
        const std::string name = c < class_names.size() ? class_names[c] : std::to_string(c);
        out += fmt::format("recall\t{}\t{}\t{:.6f}\n", c, name, report.recall[c]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

json reals(std::span<const double> values) {
    json arr = json::array();
    for (double v : values) arr.push_back(io::format_hex(v));
    return arr;
}

std::vector<double> read_reals(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw IoError(fmt::format("{}: expected an array", where));
    std::vector<double> out;
    out.reserve(arr.size());
    for (const json& v : arr) {
        if (!v.is_string()) throw IoError(fmt::format("{}: reals must be hex-encoded strings", where));
        out.push_back(io::parse_hex(v.get<std::string>()));
    }
    return out;
}

const json& need(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object() || !obj.contains(key)) throw IoError(fmt::format("{}: missing field '{}'", where, key));
    return obj[key];
}

json layer_json(const DenseLayer& l) {
    return {{"inputs", l.inputs}, {"outputs", l.outputs}, {"weights", reals(l.weights)}, {"bias", reals(l.bias)}};
}

DenseLayer read_layer(const json& j, const std::string& where) {
    DenseLayer l(need(j, "inputs", where).get<int>(), need(j, "outputs", where).get<int>());
    if (l.inputs < 0 || l.outputs < 0) throw IoError(fmt::format("{}: negative layer size", where));
    l.weights = read_reals(need(j, "weights", where), where + ".weights");
    l.bias = read_reals(need(j, "bias", where), where + ".bias");
    if (l.weights.size() != static_cast<std::size_t>(l.inputs) * l.outputs || l.bias.size() != static_cast<std::size_t>(l.outputs)) {
        throw IoError(fmt::format("{}: parameter count does not match {}x{}", where, l.outputs, l.inputs));
    }
    return l;
}

json norm_json(const Standardizer& s) { return {{"mean", reals(s.mean)}, {"stddev", reals(s.stddev)}}; }

Standardizer read_norm(const json& j, const std::string& where) {
    Standardizer s;
    s.mean = read_reals(need(j, "mean", where), where + ".mean");
    s.stddev = read_reals(need(j, "stddev", where), where + ".stddev");
    if (s.mean.size() != s.stddev.size()) throw IoError(fmt::format("{}: mean/stddev length mismatch", where));
    if (std::any_of(s.stddev.begin(), s.stddev.end(), [](double v) { return !(v > 0.0); })) {
        throw IoError(fmt::format("{}: stddev entries must be positive", where));
    }
    return s;
}

}  // namespace

std::string encode_model(const ClassifierModel& m) {
    json doc = {
        {"schema", io::kModelSchema},
        {"shape",
         {{"seg_categories", m.shape.seg_categories},
          {"obj_categories", m.shape.obj_categories},
          {"bins", m.shape.bins},
          {"global_dim", m.shape.global_dim}}},
        {"classes", m.classes},
        {"config",
         {{"learning_rate", io::format_hex(m.config.learning_rate)},
          {"epochs", m.config.epochs},
          {"batch_size", m.config.batch_size},
          {"seed", std::to_string(m.config.seed)},
          {"hidden1", m.config.hidden1},
          {"hidden2", m.config.hidden2},
          {"two_step", m.config.two_step},
          {"selection", m.config.selection.to_string()}}},
        {"semantic_norm", norm_json(m.semantic_norm)},
        {"global_norm", norm_json(m.global_norm)},
        {"layers",
         {{"hidden1", layer_json(m.hidden1)},
          {"hidden2", layer_json(m.hidden2)},
          {"output", layer_json(m.output)},
          {"probe", m.probe ? layer_json(*m.probe) : json(nullptr)}}},
    };
    return doc.dump(1) + "\n";
}

ClassifierModel parse_model(std::string_view text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw IoError(fmt::format("{}: invalid document: {}", origin, e.what()));
    }
    if (!doc.is_object() || !doc.contains("schema") || doc["schema"] != io::kModelSchema) {
        throw IoError(fmt::format("{}: not a '{}' document", origin, io::kModelSchema));
    }
    try {
        ClassifierModel m;
        const json& shape = need(doc, "shape", origin);
        m.shape = FeatureShape{need(shape, "seg_categories", origin).get<int>(), need(shape, "obj_categories", origin).get<int>(),
                               need(shape, "bins", origin).get<int>(), need(shape, "global_dim", origin).get<int>()};
        m.classes = need(doc, "classes", origin).get<int>();
        const json& cfg = need(doc, "config", origin);
        m.config.learning_rate = io::parse_hex(need(cfg, "learning_rate", origin).get<std::string>());
        m.config.epochs = need(cfg, "epochs", origin).get<int>();
        m.config.batch_size = need(cfg, "batch_size", origin).get<int>();
        m.config.seed = std::stoull(need(cfg, "seed", origin).get<std::string>());
        m.config.hidden1 = need(cfg, "hidden1", origin).get<int>();
        m.config.hidden2 = need(cfg, "hidden2", origin).get<int>();
        m.config.two_step = need(cfg, "two_step", origin).get<bool>();
        const std::string sel = need(cfg, "selection", origin).get<std::string>();
        m.config.selection = sel == "none" ? FeatureSelection{false, false, false, false, false}
                                           : FeatureSelection::parse(sel);
        m.semantic_norm = read_norm(need(doc, "semantic_norm", origin), origin + ": semantic_norm");
        m.global_norm = read_norm(need(doc, "global_norm", origin), origin + ": global_norm");
        const json& layers = need(doc, "layers", origin);
        m.hidden1 = read_layer(need(layers, "hidden1", origin), origin + ": hidden1");
        m.hidden2 = read_layer(need(layers, "hidden2", origin), origin + ": hidden2");
        m.output = read_layer(need(layers, "output", origin), origin + ": output");
        const json& probe = need(layers, "probe", origin);
        if (!probe.is_null()) m.probe = read_layer(probe, origin + ": probe");

        const bool chained = m.hidden2.inputs == m.hidden1.outputs &&
                             m.output.inputs == m.hidden2.outputs + (m.probe ? m.classes : 0) &&
                             m.output.outputs == m.classes &&
                             static_cast<int>(m.semantic_norm.mean.size()) == m.hidden1.inputs &&
                             (!m.probe || (m.probe->outputs == m.classes && m.probe->inputs == m.shape.global_dim &&
                                           static_cast<int>(m.global_norm.mean.size()) == m.shape.global_dim));
        if (!chained) throw IoError(fmt::format("{}: layer sizes are inconsistent", origin));
        const int expected = semantic_width(m.shape, m.config.selection, m.global_in_semantic());
        if (expected != m.hidden1.inputs) {
            throw IoError(fmt::format("{}: input width {} does not match shape and selection ({})", origin,
                                      m.hidden1.inputs, expected));
        }
        return m;
    } catch (const json::exception& e) {
        throw IoError(fmt::format("{}: malformed model: {}", origin, e.what()));
    } catch (const std::logic_error& e) {
        throw IoError(fmt::format("{}: malformed model: {}", origin, e.what()));
    }
}

}  // namespace semfeat
