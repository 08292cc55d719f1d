#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "fixtures.hpp"
#include "semfeat/classifier.hpp"
#include "semfeat/error.hpp"

using namespace semfeat;

TEST_CASE("feature selection names") {
    CHECK(FeatureSelection::parse("sb") == FeatureSelection::segmentation());
    CHECK(FeatureSelection::parse("ob") == FeatureSelection::objects());
    CHECK(FeatureSelection::parse("sb+ob").to_string() == "shmf+ssf+sfv+sfm");
    CHECK(FeatureSelection::parse("all") == FeatureSelection::all());
    CHECK(FeatureSelection::parse("ssf+global").to_string() == "ssf+global");
    CHECK_THROWS_AS(FeatureSelection::parse("sb+xx"), ConfigError);
}

TEST_CASE("standardizer statistics") {
    const std::vector<std::vector<double>> rows = {{1, 5, 0}, {3, 5, 2}, {5, 5, 4}};
    const Standardizer s = Standardizer::fit(rows, 3);
    CHECK(s.mean == std::vector<double>{3, 5, 2});
    CHECK(s.stddev[0] == doctest::Approx(std::sqrt(8.0 / 3.0)));
    CHECK(s.stddev[1] == 1.0);  // constant dimension keeps a unit divisor
    for (double v : s.stddev) CHECK(v > 0);
    std::vector<double> x{3, 7, 2};
    s.apply(x);
    CHECK(x == std::vector<double>{0, 2, 0});
}

TEST_CASE("double standardization is rejected") {
    Rng rng(1);
    const auto data = fixture::separable(rng, 6, 3);
    const ClassifierModel m = ClassifierModel::initialize(data[0].bundle.shape(), 3, TrainConfig{});
    ModelInput in = m.prepare(data[0].bundle);
    m.standardize(in);
    CHECK_THROWS_AS(m.standardize(in), std::logic_error);
    ModelInput raw = m.prepare(data[0].bundle);
    CHECK_THROWS_AS(forward(m, raw), std::logic_error);
}

TEST_CASE("untrained model predicts the uniform distribution") {
    Rng rng(2);
    const auto data = fixture::separable(rng, 5, 5);
    const ClassifierModel m = ClassifierModel::initialize(data[0].bundle.shape(), 5, TrainConfig{});
    const Prediction p = predict(m, data[3].bundle);
    for (double v : p.probabilities) CHECK(v == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(p.label == 0);  // ties go to the lowest index
}

TEST_CASE("gradient check on toy models") {
    for (bool two_step : {false, true}) {
        CAPTURE(two_step);
        Rng rng(3);
        const auto data = fixture::separable(rng, 8, 3, 2);
        TrainConfig cfg;
        cfg.hidden1 = 6;
        cfg.hidden2 = 4;
        cfg.two_step = two_step;
        ClassifierModel m = ClassifierModel::initialize(data[0].bundle.shape(), 3, cfg);
        CHECK(m.probe.has_value() == two_step);
        fixture::randomize(m, rng);
        const auto batch = fixture::examples(m, data);
        const fixture::GradientCheck g = fixture::check_gradients(m, batch);
        CHECK(g.parameters > 100);
        CHECK(g.max_relative_error <= 1e-4);
    }
}

TEST_CASE("separable two-class data is learned; predictions are normalized") {
    Rng rng(4);
    const auto data = fixture::separable(rng, 80, 2);
    TrainConfig cfg;
    cfg.epochs = 200;
    cfg.hidden1 = 16;
    cfg.hidden2 = 8;
    const ClassifierModel m = train(data, cfg);
    const EvalReport r = evaluate(m, data);
    CHECK(r.accuracy >= 0.99);
    CHECK(predict(m, data[0].bundle).label == data[0].label);
    for (const auto& lb : data) {
        const auto p = predict(m, lb.bundle).probabilities;
        CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("training is deterministic and serializes bit-exactly") {
    Rng rng(5);
    const auto data = fixture::separable(rng, 40, 4, 3);
    TrainConfig cfg;
    cfg.epochs = 10;
    cfg.hidden1 = 12;
    cfg.hidden2 = 6;
    const ClassifierModel a = train(data, cfg);
    const ClassifierModel b = train(data, cfg);
    CHECK(a == b);
    CHECK(encode_model(a) == encode_model(b));
    CHECK(parse_model(encode_model(a)) == a);
    CHECK(evaluate(a, data, 1).predictions == evaluate(a, data, 4).predictions);
}

TEST_CASE("two-step training freezes the global probe") {
    Rng rng(6);
    const auto data = fixture::separable(rng, 60, 3, 2);
    TrainConfig cfg;
    cfg.epochs = 15;
    cfg.two_step = true;
    cfg.hidden1 = 10;
    cfg.hidden2 = 5;
    const ClassifierModel a = train(data, cfg);
    cfg.hidden1 = 20;  // a different semantic pathway...
    const ClassifierModel b = train(data, cfg);
    REQUIRE(a.probe.has_value());
    CHECK(*a.probe == *b.probe);  // ...leaves the first-step probe untouched
    CHECK(a.output.inputs == cfg.hidden2 + 3);
    bool moved = false;
    for (double w : a.probe->weights) moved = moved || w != 0.0;
    CHECK(moved);

    cfg.two_step = false;
    const ClassifierModel joint = train(data, cfg);
    CHECK_FALSE(joint.probe.has_value());
    CHECK(joint.global_in_semantic());
}

TEST_CASE("training errors") {
    Rng rng(7);
    CHECK_THROWS_AS(train({}, TrainConfig{}), TrainingError);
    auto one_class = fixture::separable(rng, 6, 1);
    CHECK_THROWS_AS(train(one_class, TrainConfig{}), TrainingError);
    auto drift = fixture::separable(rng, 6, 2);
    drift.push_back(fixture::separable(rng, 1, 1, 2)[0]);
    CHECK_THROWS_AS(train(drift, TrainConfig{}), TrainingError);
    TrainConfig bad;
    bad.learning_rate = 0;
    CHECK_THROWS_AS(train(fixture::separable(rng, 6, 2), bad), ConfigError);
}

TEST_CASE("evaluation tallies") {
    const std::vector<int> truth{0, 1, 2, 2, 1};
    const EvalReport perfect = tally(truth, truth, 3);
    CHECK(perfect.accuracy == 1.0);
    for (int t = 0; t < 3; ++t)
        for (int p = 0; p < 3; ++p)
            if (t != p) CHECK(perfect.confusion[t][p] == 0);

    const std::vector<int> constant(5, 1);
    const EvalReport flat = tally(truth, constant, 3);
    for (int t = 0; t < 3; ++t) {
        CHECK(flat.confusion[t][0] == 0);
        CHECK(flat.confusion[t][2] == 0);
    }
    CHECK(flat.accuracy == doctest::Approx(0.4));
    CHECK(flat.recall[1] == 1.0);
    CHECK(flat.recall[0] == 0.0);

    const std::string text = format_report(flat, {}, "demo");
    CHECK(text.rfind("# semfeat.eval/1\n# demo\nsamples\t5\naccuracy\t0.400000\n", 0) == 0);
}

TEST_CASE("model files reject inconsistent contents") {
    Rng rng(8);
    const auto data = fixture::separable(rng, 10, 2);
    TrainConfig cfg;
    cfg.epochs = 1;
    cfg.hidden1 = 3;
    cfg.hidden2 = 2;
    std::string text = encode_model(train(data, cfg));
    CHECK_THROWS_AS(parse_model("{}"), IoError);
    const auto pos = text.find("\"hidden2\": 2");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 12, "\"hidden2\": 3");
    CHECK_NOTHROW(parse_model(text));  // config echo only; layer sizes are authoritative
    const auto layer = text.find("\"outputs\": 2");
    REQUIRE(layer != std::string::npos);
    text.replace(layer, 12, "\"outputs\": 5");
    CHECK_THROWS_AS(parse_model(text), IoError);
}
