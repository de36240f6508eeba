#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace secretscan {

struct ConfusionMatrix {
    std::uint64_t tp = 0;
    std::uint64_t fp = 0;
    std::uint64_t fn = 0;
    std::uint64_t tn = 0;

    std::uint64_t total() const { return tp + fp + fn + tn; }
    friend bool operator==(const ConfusionMatrix&, const ConfusionMatrix&) = default;
};

struct MetricsReport {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    double f1_positive = 0.0;
    double f1_negative = 0.0;
    double f_beta = 0.0;
    double beta = 1.0;
    ConfusionMatrix confusion;
};

// Two raters' labels on the same items.
struct AgreementMatrix {
    std::uint64_t both_pos = 0;
    std::uint64_t r1pos_r2neg = 0;
    std::uint64_t r1neg_r2pos = 0;
    std::uint64_t both_neg = 0;

    std::uint64_t total() const { return both_pos + r1pos_r2neg + r1neg_r2pos + both_neg; }
    std::uint64_t disagreements() const { return r1pos_r2neg + r1neg_r2pos; }
    AgreementMatrix transposed() const { return {both_pos, r1neg_r2pos, r1pos_r2neg, both_neg}; }
    friend bool operator==(const AgreementMatrix&, const AgreementMatrix&) = default;
};

// Throws ValidationError on empty input or a length mismatch.
ConfusionMatrix confusion_from(const std::vector<bool>& verdicts, const std::vector<bool>& labels);

// Ratio with the 0/0 -> 0 convention.
double safe_ratio(double num, double den);

// (1 + b^2) P R / (b^2 P + R); 0 when the denominator vanishes.
double f_beta_from(double precision, double recall, double beta);

// Throws ValidationError when the matrix is empty or beta is not positive.
MetricsReport compute_metrics(const ConfusionMatrix& cm, double beta);

// Cohen's kappa; 1.0 when chance agreement is already 1. Throws
// ValidationError on an empty matrix.
double cohen_kappa(const AgreementMatrix& m);

std::string to_json(const MetricsReport& r);

}  // namespace secretscan
