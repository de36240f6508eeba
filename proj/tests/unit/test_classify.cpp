#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "secretscan/classify.hpp"
#include "secretscan/error.hpp"
#include "secretscan/ingest.hpp"
#include "secretscan/unicode.hpp"

using namespace secretscan;

namespace {

ContextWindow window_of(const std::string& body, std::size_t start, std::size_t end, std::size_t radius = 125) {
    return extract_window(body, {start, end}, radius);
}

// Two well separated clusters in feature space.
std::vector<Example> toy_data(std::uint64_t seed, std::size_t pos, std::size_t neg) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 0.3);
    std::vector<Example> out;
    for (std::size_t i = 0; i < pos + neg; ++i) {
        const bool label = i < pos;
        FeatureVector fv;
        fv.values.assign(kFeatureCount, 0.0);
        for (auto& v : fv.values) v = g(rng) + (label ? 1.0 : -1.0);
        fv.values[kCandidateLength] = (label ? 30.0 : 10.0) + 5 * g(rng);
        out.push_back({fv, label});
    }
    return out;
}

}  // namespace

TEST(Entropy, KnownValues) {
    EXPECT_DOUBLE_EQ(entropy(""), 0.0);
    EXPECT_DOUBLE_EQ(entropy("aaaa"), 0.0);
    EXPECT_DOUBLE_EQ(entropy("ab"), 1.0);
    EXPECT_DOUBLE_EQ(entropy("abcd"), 2.0);
    EXPECT_NEAR(entropy("aab"), 0.9182958340544896, 1e-12);
    EXPECT_DOUBLE_EQ(entropy("\xC3\xA9\xF0\x9F\x98\x80"), 1.0);
}

TEST(Entropy, MatchesBruteForceOracle) {
    std::mt19937_64 rng(1);
    for (int i = 0; i < 500; ++i) {
        const auto s = oracle::random_text(rng, rng() % 80, 1 + rng() % 20);
        EXPECT_NEAR(entropy(s), oracle::entropy(s), 1e-9) << s;
    }
}

TEST(Entropy, BoundedByLogOfDistinctSymbols) {
    std::mt19937_64 rng(2);
    for (int i = 0; i < 300; ++i) {
        const auto s = oracle::random_text(rng, 1 + rng() % 60, 1 + rng() % 10);
        auto cps = oracle::code_points(s);
        std::sort(cps.begin(), cps.end());
        const auto distinct = std::unique(cps.begin(), cps.end()) - cps.begin();
        const double h = entropy(s);
        EXPECT_GE(h, 0.0);
        EXPECT_LE(h, std::log2(static_cast<double>(distinct)) + 1e-12);
    }
}

TEST(Entropy, InvariantUnderPermutation) {
    std::mt19937_64 rng(4);
    for (int i = 0; i < 200; ++i) {
        auto cps = oracle::code_points(oracle::random_text(rng, rng() % 50, 8));
        const auto before = entropy(oracle::join(cps, 0, cps.size()));
        std::shuffle(cps.begin(), cps.end(), rng);
        EXPECT_NEAR(entropy(oracle::join(cps, 0, cps.size())), before, 1e-12);
    }
}

TEST(Featurize, ProducesSchemaVectorWithExpectedValues) {
    const std::string body = "db password: aB3$xxxx";
    const auto w = window_of(body, 13, 21);
    const auto fv = featurize(w);
    ASSERT_EQ(fv.values.size(), static_cast<std::size_t>(kFeatureCount));
    EXPECT_EQ(fv.schema_version, kFeatureSchemaVersion);
    EXPECT_DOUBLE_EQ(fv.values[kCandidateLength], 8.0);
    EXPECT_DOUBLE_EQ(fv.values[kDigitRatio], 1.0 / 8);
    EXPECT_DOUBLE_EQ(fv.values[kUpperRatio], 1.0 / 8);
    EXPECT_DOUBLE_EQ(fv.values[kLowerRatio], 5.0 / 8);
    EXPECT_DOUBLE_EQ(fv.values[kSymbolRatio], 1.0 / 8);
    EXPECT_DOUBLE_EQ(fv.values[kMaskRatio], 4.0 / 8);
    EXPECT_DOUBLE_EQ(fv.values[kKeywordPassword], 1.0);
    EXPECT_DOUBLE_EQ(fv.values[kKeywordToken], 0.0);
    EXPECT_DOUBLE_EQ(fv.values[kAssignmentShape], 1.0);
    EXPECT_DOUBLE_EQ(fv.values[kContextLength], 13.0);
    EXPECT_DOUBLE_EQ(fv.values[kHexOnly], 0.0);
    EXPECT_DOUBLE_EQ(fv.values[kPlaceholderMarker], 0.0);
    EXPECT_NEAR(fv.values[kCandidateEntropy], oracle::entropy("aB3$xxxx"), 1e-12);
    EXPECT_EQ(feature_names().size(), static_cast<std::size_t>(kFeatureCount));
    EXPECT_EQ(feature_names()[kHexOnly], "hex_only");
}

TEST(Featurize, HexAndPlaceholderFlags) {
    const auto hex = featurize(window_of("id deadbeef00", 3, 13));
    EXPECT_DOUBLE_EQ(hex.values[kHexOnly], 1.0);
    EXPECT_DOUBLE_EQ(hex.values[kAssignmentShape], 0.0);
    const auto ph = featurize(window_of("api_key=YOUR_API_KEY_HERE", 8, 25));
    EXPECT_DOUBLE_EQ(ph.values[kPlaceholderMarker], 1.0);
    EXPECT_DOUBLE_EQ(ph.values[kKeywordKey], 1.0);
}

TEST(Featurize, ShortMaskRunsDoNotCount) {
    const auto fv = featurize(window_of("xXab**", 0, 6));
    EXPECT_DOUBLE_EQ(fv.values[kMaskRatio], 0.0);
}

TEST(Loss, GradientMatchesFiniteDifferences) {
    std::mt19937_64 rng(10);
    for (int i = 0; i < 50; ++i) EXPECT_LT(oracle::gradient_relative_error(rng), 1e-4);
}

TEST(Loss, MatchesNaiveDefinition) {
    const std::vector<std::vector<double>> rows = {{1, 2}, {-1, 0.5}, {0, -3}};
    const std::vector<bool> labels = {true, false, true};
    const std::vector<double> sw = {1, 2, 0.5}, w = {0.3, -0.2};
    EXPECT_NEAR(weighted_log_loss(rows, labels, sw, w, 0.1).loss, oracle::naive_loss(rows, labels, sw, w, 0.1), 1e-12);
}

TEST(Loss, StableForExtremeLogits) {
    const auto lg = weighted_log_loss({{1000.0}, {-1000.0}}, {false, true}, {1.0, 1.0}, {1.0}, 0.0);
    EXPECT_TRUE(std::isfinite(lg.loss));
    EXPECT_NEAR(lg.loss, 1000.0, 1e-9);
}

TEST(ClassWeights, BalancedWeightsSumPerClassToHalf) {
    const std::vector<bool> labels = {true, false, false, false};
    const auto sw = class_sample_weights(labels, ClassWeight::balanced);
    EXPECT_DOUBLE_EQ(sw[0], 2.0);
    EXPECT_DOUBLE_EQ(sw[1], 4.0 / 6.0);
    const auto none = class_sample_weights(labels, ClassWeight::none);
    EXPECT_DOUBLE_EQ(none[0], 1.0);
    EXPECT_EQ(parse_class_weight("none"), ClassWeight::none);
    EXPECT_THROW(parse_class_weight("inverse"), ValidationError);
}

TEST(Train, LossDecreasesAndSeparatesToyData) {
    const auto data = toy_data(5, 20, 80);
    std::vector<double> history;
    TrainParams hp;
    hp.epochs = 300;
    const auto m = train(data, hp, &history);
    ASSERT_EQ(history.size(), 300u);
    for (std::size_t i = 1; i < history.size(); ++i) EXPECT_LE(history[i], history[i - 1] + 1e-12);
    std::size_t correct = 0;
    for (const auto& e : data) correct += (sigmoid(m.logit(e.features)) >= 0.5) == e.label;
    EXPECT_EQ(correct, data.size());
}

TEST(Train, DeterministicForFixedSeed) {
    const auto data = toy_data(6, 10, 30);
    TrainParams hp;
    hp.epochs = 100;
    const auto a = train(data, hp), b = train(data, hp);
    EXPECT_EQ(a.weights, b.weights);
    EXPECT_EQ(a.bias, b.bias);
    hp.seed = 7;
    EXPECT_NE(train(data, hp).weights, a.weights);
}

TEST(Train, RejectsDegenerateInput) {
    TrainParams hp;
    EXPECT_THROW(train({}, hp), ValidationError);
    auto one_class = toy_data(1, 5, 0);
    EXPECT_THROW(train(one_class, hp), ValidationError);
    hp.learning_rate = 0;
    EXPECT_THROW(train(toy_data(1, 5, 5), hp), ValidationError);
}

TEST(Train, DivergenceIsReported) {
    TrainParams hp;
    hp.learning_rate = std::numeric_limits<double>::max() / 4;
    hp.epochs = 50;
    // Overlapping classes keep the gradient away from zero, so the step explodes.
    auto data = toy_data(2, 10, 10);
    for (std::size_t i = 0; i < data.size(); i += 3) data[i].label = !data[i].label;
    EXPECT_THROW(train(data, hp), Error);
}

TEST(Predict, ThresholdIsInclusive) {
    ClassifierModel m;
    m.weights.assign(kFeatureCount, 0.0);
    m.bias = 0.0;  // score exactly 0.5
    const auto w = window_of("token=abc", 6, 9);
    EXPECT_TRUE(predict(m, w).is_breach);
    m.bias = -1e-9;
    EXPECT_FALSE(predict(m, w).is_breach);
    EXPECT_DOUBLE_EQ(sigmoid(0.0), 0.5);
    EXPECT_NEAR(sigmoid(-800.0), 0.0, 1e-300);
}

TEST(Predict, SchemaMismatchIsRejected) {
    ClassifierModel m;
    m.weights.assign(kFeatureCount, 0.0);
    m.schema_version = kFeatureSchemaVersion + 1;
    EXPECT_THROW(predict(m, window_of("abc", 0, 3)), ValidationError);
}

TEST(ModelFile, RoundTripsExactly) {
    const auto m = train(toy_data(8, 10, 10), TrainParams{});
    const auto back = model_from_json(model_to_json(m));
    EXPECT_EQ(back.weights, m.weights);
    EXPECT_EQ(back.bias, m.bias);
    EXPECT_EQ(back.threshold, m.threshold);
    EXPECT_EQ(back.training_meta.epochs, m.training_meta.epochs);
    const auto path = std::filesystem::temp_directory_path() / "secretscan_model.json";
    save_model(m, path);
    EXPECT_EQ(load_model(path).weights, m.weights);
    write_file(path, "{\"schema_version\":1,\"weights\":[1,2],\"bias\":0,\"threshold\":0.5}");
    EXPECT_THROW(load_model(path), ValidationError);
    write_file(path, "{");
    EXPECT_THROW(load_model(path), ParseError);
    std::filesystem::remove(path);
}
