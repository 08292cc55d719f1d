#pragma once

#include <cmath>
#include <vector>

#include "semfeat/classifier.hpp"
#include "semfeat/rng.hpp"

namespace fixture {

/// Small bundles (L=2, N=2, K=2, optional global) whose class is set by a
/// few informative entries plus noise.
inline std::vector<semfeat::LabeledBundle> separable(semfeat::Rng& rng, int count, int classes, int global_dim = 0) {
    using namespace semfeat;
    const FeatureShape shape{2, 2, 2, global_dim};
    std::vector<LabeledBundle> out;
    for (int i = 0; i < count; ++i) {
        const int label = i % classes;
        std::vector<double> flat(shape.flattened_size());
        for (auto& v : flat) v = rng.normal() * 0.3;
        flat[static_cast<std::size_t>(label % 7)] += 3.0;  // SHMF entries carry the class
        const std::size_t sfv_at = shape.shmf_size() + shape.ssf_size();
        flat[sfv_at] = static_cast<double>(rng.uniform_int(0, 3));
        flat[sfv_at + 1] = static_cast<double>(rng.uniform_int(0, 3));
        for (std::size_t k = sfv_at + 2; k < sfv_at + 2 + shape.sfm_size(); ++k)
            flat[k] = static_cast<double>(rng.uniform_int(0, 2));
        if (global_dim > 0) flat[shape.flattened_size() - static_cast<std::size_t>(global_dim)] += label;
        out.push_back({FeatureBundle::unflatten(shape, flat), label});
    }
    return out;
}

/// Fills every trainable parameter with small random values.
inline void randomize(semfeat::ClassifierModel& model, semfeat::Rng& rng) {
    const auto fill = [&rng](semfeat::DenseLayer& l) {
        for (auto& w : l.weights) w = rng.uniform(-0.5, 0.5);
        for (auto& b : l.bias) b = rng.uniform(-0.2, 0.2);
    };
    fill(model.hidden1);
    fill(model.hidden2);
    fill(model.output);
    if (model.probe) fill(*model.probe);
}

struct GradientCheck {
    double max_relative_error = 0;
    std::size_t parameters = 0;
};

/// Backprop vs central differences over every parameter.
/// Relative error is |a - n| / max(|a| + |n|, floor).
inline GradientCheck check_gradients(semfeat::ClassifierModel model, const std::vector<semfeat::Example>& batch,
                                     double step = 1e-3, double floor = 1e-8) {
    using namespace semfeat;
    Gradients grads;
    loss_and_gradients(model, batch, grads);
    GradientCheck result;
    const auto sweep = [&](DenseLayer& layer, const DenseLayer& g) {
        const auto probe = [&](double& param, double analytic) {
            const double saved = param;
            param = saved + step;
            const double up = loss(model, batch);
            param = saved - step;
            const double down = loss(model, batch);
            param = saved;
            const double numeric = (up - down) / (2 * step);
            const double rel = std::fabs(analytic - numeric) / std::max(std::fabs(analytic) + std::fabs(numeric), floor);
            result.max_relative_error = std::max(result.max_relative_error, rel);
            ++result.parameters;
        };
        for (std::size_t k = 0; k < layer.weights.size(); ++k) probe(layer.weights[k], g.weights[k]);
        for (std::size_t k = 0; k < layer.bias.size(); ++k) probe(layer.bias[k], g.bias[k]);
    };
    sweep(model.hidden1, grads.hidden1);
    sweep(model.hidden2, grads.hidden2);
    sweep(model.output, grads.output);
    if (model.probe) sweep(*model.probe, *grads.probe);
    return result;
}

/// Standardized examples for `model` built from raw bundles.
inline std::vector<semfeat::Example> examples(const semfeat::ClassifierModel& model,
                                              const std::vector<semfeat::LabeledBundle>& data) {
    std::vector<semfeat::Example> out;
    for (const auto& lb : data) {
        semfeat::ModelInput in = model.prepare(lb.bundle);
        model.standardize(in);
        out.push_back({std::move(in), lb.label});
    }
    return out;
}

}  // namespace fixture
