#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "secretscan/classify.hpp"
#include "secretscan/patterns.hpp"
#include "secretscan/preprocess.hpp"
#include "secretscan/window.hpp"

namespace secretscan {

struct PipelineConfig {
    std::size_t radius = kDefaultWindowRadius;
    // Overrides the model's decision threshold when set.
    std::optional<double> threshold;
    // Score windows with a remote model service instead of the local model.
    std::optional<std::string> remote_endpoint;
    std::chrono::milliseconds remote_timeout{5000};
};

struct ScanOutcome {
    std::string cleaned;
    std::vector<Verdict> verdicts;  // one per candidate, scan order
    bool breach = false;
};

// clean -> scan -> window -> classify. Immutable after construction and safe
// to share between threads.
class Pipeline {
public:
    Pipeline(RuleSet rules, PatternRegistry patterns, ClassifierModel model, PipelineConfig config = {});

    ScanOutcome run(std::string_view body, std::string_view report_id = {}) const;

    const RuleSet& rules() const { return rules_; }
    const PatternRegistry& patterns() const { return patterns_; }
    const ClassifierModel& model() const { return model_; }
    const PipelineConfig& config() const { return config_; }
    double threshold() const { return model_.threshold; }

private:
    RuleSet rules_;
    PatternRegistry patterns_;
    ClassifierModel model_;
    PipelineConfig config_;
};

// Model trained on the bundled synthetic corpus with the built-in rules and
// patterns. Computed once per process.
const ClassifierModel& default_model();

}  // namespace secretscan
