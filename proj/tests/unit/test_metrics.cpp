#include <gtest/gtest.h>

#include <json.hpp>
#include <random>

#include "oracles.hpp"
#include "secretscan/error.hpp"
#include "secretscan/metrics.hpp"

using namespace secretscan;

namespace {

// Kappa from the textbook two-rater formula over raw counts.
double kappa_oracle(double a, double b, double c, double d) {
    const double n = a + b + c + d;
    const double po = (a + d) / n;
    const double pe = ((a + b) * (a + c) + (c + d) * (b + d)) / (n * n);
    return pe == 1.0 ? 1.0 : (po - pe) / (1 - pe);
}

}  // namespace

TEST(Metrics, ConfusionFromVectors) {
    const auto cm = confusion_from({true, true, false, false, true}, {true, false, true, false, true});
    EXPECT_EQ(cm, (ConfusionMatrix{2, 1, 1, 1}));
    EXPECT_THROW(confusion_from({true}, {true, false}), ValidationError);
    EXPECT_THROW(confusion_from({}, {}), ValidationError);
}

TEST(Metrics, HandComputedReport) {
    const auto r = compute_metrics({6, 2, 4, 8}, 2.0);
    EXPECT_DOUBLE_EQ(r.precision, 0.75);
    EXPECT_DOUBLE_EQ(r.recall, 0.6);
    EXPECT_NEAR(r.f1, 2 * 0.75 * 0.6 / 1.35, 1e-15);
    EXPECT_DOUBLE_EQ(r.f1_positive, r.f1);
    // Negative class: precision 8/12, recall 8/10.
    EXPECT_NEAR(r.f1_negative, 2 * (8.0 / 12) * 0.8 / (8.0 / 12 + 0.8), 1e-15);
    EXPECT_NEAR(r.f_beta, 5 * 0.75 * 0.6 / (4 * 0.75 + 0.6), 1e-15);
    EXPECT_DOUBLE_EQ(r.beta, 2.0);
}

TEST(Metrics, ZeroDivisionYieldsZero) {
    const auto none_predicted = compute_metrics({0, 0, 5, 5}, 1.0);
    EXPECT_EQ(none_predicted.precision, 0.0);
    EXPECT_EQ(none_predicted.f1, 0.0);
    const auto all_negative = compute_metrics({0, 3, 0, 0}, 1.0);
    EXPECT_EQ(all_negative.recall, 0.0);
    EXPECT_EQ(all_negative.f1_negative, 0.0);
    EXPECT_EQ(f_beta_from(0.0, 0.0, 1.0), 0.0);
}

TEST(Metrics, RejectsBadInput) {
    EXPECT_THROW(compute_metrics({}, 1.0), ValidationError);
    EXPECT_THROW(compute_metrics({1, 0, 0, 0}, 0.0), ValidationError);
    EXPECT_THROW(compute_metrics({1, 0, 0, 0}, -1.0), ValidationError);
}

TEST(Metrics, FBetaReferenceValues) {
    EXPECT_NEAR(f_beta_from(0.6309, 0.6385, 1.0), 0.6347, 0.0005);
    EXPECT_NEAR(f_beta_from(0.0174, 0.8554, 1.0), 0.0341, 0.0005);
    EXPECT_NEAR(f_beta_from(0.5, 0.5, 3.0), 0.5, 1e-15);
}

TEST(Metrics, BruteForceRecountProperty) {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 200; ++i) {
        const std::size_t n = 1 + rng() % 60;
        std::vector<bool> v(n), l(n);
        for (std::size_t k = 0; k < n; ++k) {
            v[k] = rng() & 1;
            l[k] = rng() & 1;
        }
        const auto c = oracle::recount(v, l);
        const auto r = compute_metrics(confusion_from(v, l), 1.0);
        EXPECT_EQ(r.confusion, (ConfusionMatrix{c.tp, c.fp, c.fn, c.tn}));
        EXPECT_EQ(r.precision, c.tp + c.fp ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp) : 0.0);
        EXPECT_EQ(r.recall, c.tp + c.fn ? static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn) : 0.0);
    }
}

TEST(Kappa, ReferenceAgreementTable) {
    EXPECT_NEAR(cohen_kappa({184, 13, 16, 187}), 0.855, 0.001);
    EXPECT_NEAR(cohen_kappa({184, 13, 16, 187}), kappa_oracle(184, 13, 16, 187), 1e-12);
}

TEST(Kappa, EdgeCases) {
    EXPECT_DOUBLE_EQ(cohen_kappa({10, 0, 0, 0}), 1.0);  // both raters constant and agreeing
    EXPECT_DOUBLE_EQ(cohen_kappa({5, 0, 0, 5}), 1.0);
    EXPECT_DOUBLE_EQ(cohen_kappa({0, 5, 5, 0}), -1.0);
    EXPECT_THROW(cohen_kappa({}), ValidationError);
}

TEST(Kappa, SymmetricAndMatchesOracleProperty) {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 300; ++i) {
        AgreementMatrix m{rng() % 50, rng() % 50, rng() % 50, rng() % 50};
        if (m.total() == 0) continue;
        const double k = cohen_kappa(m);
        EXPECT_NEAR(k, cohen_kappa(m.transposed()), 1e-12);
        EXPECT_NEAR(k, kappa_oracle(m.both_pos, m.r1pos_r2neg, m.r1neg_r2pos, m.both_neg), 1e-12);
        EXPECT_LE(k, 1.0 + 1e-12);
    }
}

TEST(Metrics, JsonCarriesAllFields) {
    const auto j = nlohmann::json::parse(to_json(compute_metrics({1, 1, 1, 1}, 1.0)));
    for (const char* key : {"precision", "recall", "f1", "f1_positive", "f1_negative", "f_beta", "beta", "confusion"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_EQ(j["confusion"]["tp"], 1);
}
