#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "secretscan/patterns.hpp"
#include "secretscan/window.hpp"

namespace secretscan {

// Shannon entropy in bits per code point; 0 for the empty string.
double entropy(std::string_view s);

inline constexpr int kFeatureSchemaVersion = 1;

// Index layout of schema version 1.
enum Feature : std::size_t {
    kCandidateEntropy,
    kCandidateLength,
    kDigitRatio,
    kUpperRatio,
    kLowerRatio,
    kSymbolRatio,
    kMaskRatio,
    kKeywordPassword,
    kKeywordToken,
    kKeywordKey,
    kKeywordSecret,
    kKeywordAuth,
    kKeywordSession,
    kKeywordCredential,
    kAssignmentShape,
    kContextLength,
    kHexOnly,
    kPlaceholderMarker,
    kFeatureCount
};

const std::array<std::string_view, kFeatureCount>& feature_names();

struct FeatureVector {
    std::vector<double> values;
    int schema_version = kFeatureSchemaVersion;

    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

FeatureVector featurize(const ContextWindow& w);

enum class ClassWeight { balanced, none };

std::string_view to_string(ClassWeight w);
ClassWeight parse_class_weight(std::string_view s);

struct TrainParams {
    double learning_rate = 0.5;
    int epochs = 2000;
    std::uint64_t seed = 42;
    ClassWeight class_weight = ClassWeight::balanced;
    double threshold = 0.5;
};

struct ClassifierModel {
    std::vector<double> weights;
    double bias = 0.0;
    double threshold = 0.5;
    int schema_version = kFeatureSchemaVersion;
    TrainParams training_meta;

    double logit(const FeatureVector& x) const;
};

struct Example {
    FeatureVector features;
    bool label = false;
};

// Class-weighted mean binary cross-entropy of a logistic model and its
// gradient. Exposed so the optimizer can be checked numerically.
struct LossGradient {
    double loss = 0.0;
    std::vector<double> grad_weights;
    double grad_bias = 0.0;
};

LossGradient weighted_log_loss(const std::vector<std::vector<double>>& rows, const std::vector<bool>& labels,
                               const std::vector<double>& sample_weights, const std::vector<double>& weights,
                               double bias);

// Per-example weights for the chosen class weighting.
std::vector<double> class_sample_weights(const std::vector<bool>& labels, ClassWeight mode);

// Deterministic full-batch gradient descent on standardized features; the
// standardization is folded back so the returned weights apply to raw
// featurize() output. `loss_history`, when given, receives the loss per epoch.
// Throws ValidationError for empty or single-class data and Error when the
// loss stops being finite.
ClassifierModel train(const std::vector<Example>& data, const TrainParams& hp,
                      std::vector<double>* loss_history = nullptr);

struct Verdict {
    CandidateSecret candidate;
    double score = 0.0;
    bool is_breach = false;
};

double sigmoid(double z);

// Throws ValidationError on a feature schema mismatch.
Verdict predict(const ClassifierModel& model, const ContextWindow& w, CandidateSecret candidate = {});

// Posts {"window_text", "candidate_offset": [start, end]} to `endpoint` and
// expects {"score": s} with s in [0, 1]. The verdict is thresholded locally.
// Throws RemoteError on timeout, non-2xx status, or a malformed reply.
Verdict predict_remote(std::string_view endpoint, const ContextWindow& w, std::chrono::milliseconds timeout,
                       double threshold = 0.5, CandidateSecret candidate = {});

std::string model_to_json(const ClassifierModel& m);
ClassifierModel model_from_json(std::string_view text);
void save_model(const ClassifierModel& m, const std::filesystem::path& path);
ClassifierModel load_model(const std::filesystem::path& path);

}  // namespace secretscan
