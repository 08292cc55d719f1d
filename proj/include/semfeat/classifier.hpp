#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semfeat/core.hpp"

namespace semfeat {

/// Checks every block of the bundle against `shape`; throws ConfigError naming the offending block.
FeatureBundle build_bundle(const FeatureShape& shape, ShmfMatrix shmf, SsfMatrix ssf, Sfv sfv, Sfm sfm,
                           std::optional<std::vector<double>> global = std::nullopt);

/// Which feature families feed the classifier. "Sb" is shmf+ssf, "Ob" is sfv+sfm.
struct FeatureSelection {
    bool shmf = true;
    bool ssf = true;
    bool sfv = true;
    bool sfm = true;
    bool global = true;

    static FeatureSelection all() { return {}; }
    static FeatureSelection segmentation() { return {true, true, false, false, false}; }
    static FeatureSelection objects() { return {false, false, true, true, false}; }

    /// Accepts '+'-joined names: sb, ob, shmf, ssf, sfv, sfm, global, all.
    static FeatureSelection parse(std::string_view text);
    std::string to_string() const;
    bool any_semantic() const noexcept { return shmf || ssf || sfv || sfm; }

    bool operator==(const FeatureSelection&) const = default;
};

/// Fully connected layer; weights are row-major (outputs x inputs).
struct DenseLayer {
    int inputs = 0;
    int outputs = 0;
    std::vector<double> weights;
    std::vector<double> bias;

    DenseLayer() = default;
    DenseLayer(int in, int out)
        : inputs(in), outputs(out), weights(static_cast<std::size_t>(in) * out, 0.0),
          bias(static_cast<std::size_t>(out), 0.0) {}

    double& weight(int o, int i) { return weights[static_cast<std::size_t>(o) * inputs + i]; }
    double weight(int o, int i) const { return weights[static_cast<std::size_t>(o) * inputs + i]; }

    bool operator==(const DenseLayer&) const = default;
};

/// Classifier input for one sample, split into the semantic pathway and the global block.
struct ModelInput {
    std::vector<double> semantic;
    std::vector<double> global;
    bool standardized = false;
};

/// Per-dimension standardization fit on training data.
struct Standardizer {
    std::vector<double> mean;
    std::vector<double> stddev;

    /// Dimensions whose training spread is below this keep a unit divisor.
    static constexpr double kMinStddev = 1e-8;

    static Standardizer fit(std::span<const std::vector<double>> rows, std::size_t dims);
    void apply(std::vector<double>& values) const;

    bool operator==(const Standardizer&) const = default;
};

struct TrainConfig {
    double learning_rate = 0.05;
    int epochs = 60;
    int batch_size = 32;
    std::uint64_t seed = 1;
    int hidden1 = 256;
    int hidden2 = 64;
    bool two_step = false;
    FeatureSelection selection;

    bool operator==(const TrainConfig&) const = default;
};

/**
 * Feed-forward fusion classifier.
 *
 * semantic -> hidden1 (ReLU) -> hidden2 (ReLU) -> output. With a global probe,
 * the probe's class scores over the standardized global block are concatenated
 * to the second hidden layer before the output layer; the probe itself is
 * frozen after the first training step.
 */
struct ClassifierModel {
    FeatureShape shape;
    TrainConfig config;
    int classes = 0;
    Standardizer semantic_norm;
    Standardizer global_norm;
    DenseLayer hidden1;
    DenseLayer hidden2;
    DenseLayer output;
    std::optional<DenseLayer> probe;

    int semantic_dims() const noexcept { return hidden1.inputs; }
    bool global_in_semantic() const noexcept { return config.selection.global && !probe && shape.global_dim > 0; }

    /// Layers sized for `shape` and `config`; hidden layers He-uniform from the seed,
    /// output and probe layers zero (uniform predictions until trained).
    static ClassifierModel initialize(const FeatureShape& shape, int classes, const TrainConfig& config);

    /// Raw (unstandardized) input for a bundle; throws ConfigError on shape mismatch.
    ModelInput prepare(const FeatureBundle& bundle) const;
    /// Applies the stored statistics; throws std::logic_error when `input` is already standardized.
    void standardize(ModelInput& input) const;

    bool operator==(const ClassifierModel&) const = default;
};

struct LabeledBundle {
    FeatureBundle bundle;
    int label = 0;
};

/// Standardized input with its label.
struct Example {
    ModelInput input;
    int label = 0;
};

/// Gradients with the same layout as the trainable layers.
struct Gradients {
    DenseLayer hidden1;
    DenseLayer hidden2;
    DenseLayer output;
    std::optional<DenseLayer> probe;
};

/// Mean softmax cross-entropy over `batch` and its gradient w.r.t. every layer
/// (probe gradient included when the model has a probe).
double loss_and_gradients(const ClassifierModel& model, std::span<const Example> batch, Gradients& grads);

/// Mean softmax cross-entropy over `batch`.
double loss(const ClassifierModel& model, std::span<const Example> batch);

/// Class probabilities for a standardized input.
std::vector<double> forward(const ClassifierModel& model, const ModelInput& input);

/// Throws TrainingError on an empty dataset, fewer than two classes, negative
/// labels, or bundles of differing shapes. Deterministic for a fixed config.
ClassifierModel train(std::span<const LabeledBundle> dataset, const TrainConfig& config);

struct Prediction {
    int label = 0;
    std::vector<double> probabilities;
};

/// Argmax with the lowest index winning ties.
Prediction predict(const ClassifierModel& model, const FeatureBundle& bundle);

struct EvalReport {
    std::size_t total = 0;
    double accuracy = 0;
    std::vector<std::vector<std::uint64_t>> confusion;  ///< [true][predicted]
    std::vector<double> recall;                         ///< per true class; 0 when the class has no samples
    std::vector<int> predictions;                       ///< per sample, dataset order
};

EvalReport evaluate(const ClassifierModel& model, std::span<const LabeledBundle> dataset, int threads = 1);

/// Report built from per-sample predictions (counts commute, so order does not matter).
EvalReport tally(std::span<const int> truth, std::span<const int> predicted, int classes);

/// Stable text layout; see docs/formats.md.
std::string format_report(const EvalReport& report, std::span<const std::string> class_names = {},
                          std::string_view header = {});

std::string encode_model(const ClassifierModel& model);
ClassifierModel parse_model(std::string_view text, const std::string& origin = "<memory>");

}  // namespace semfeat
