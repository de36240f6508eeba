#include "secretscan/pipeline.hpp"

#include "secretscan/error.hpp"
#include "secretscan/synth.hpp"

namespace secretscan {

Pipeline::Pipeline(RuleSet rules, PatternRegistry patterns, ClassifierModel model, PipelineConfig config)
    : rules_(std::move(rules)), patterns_(std::move(patterns)), model_(std::move(model)), config_(std::move(config)) {
    if (config_.threshold) {
        if (!(*config_.threshold > 0 && *config_.threshold < 1)) throw ValidationError("threshold must lie in (0, 1)");
        model_.threshold = *config_.threshold;
    }
}

ScanOutcome Pipeline::run(std::string_view body, std::string_view report_id) const {
    ScanOutcome out;
    out.cleaned = clean(body, rules_).cleaned;
    for (auto& c : scan(out.cleaned, patterns_, report_id)) {
        const auto w = extract_window(out.cleaned, c.span, config_.radius);
        auto v = config_.remote_endpoint
                     ? predict_remote(*config_.remote_endpoint, w, config_.remote_timeout, model_.threshold, std::move(c))
                     : predict(model_, w, std::move(c));
        out.breach = out.breach || v.is_breach;
        out.verdicts.push_back(std::move(v));
    }
    return out;
}

const ClassifierModel& default_model() {
    static const ClassifierModel model = [] {
        const auto corpus = synth::generate({});
        const auto labeled = synth::label_candidates(corpus, corpus.reports, builtin_rules(), builtin_patterns(),
                                                     kDefaultWindowRadius);
        std::vector<Example> data;
        data.reserve(labeled.size());
        for (const auto& lw : labeled) data.push_back({featurize(lw.window), lw.label});
        return train(data, TrainParams{});
    }();
    return model;
}

}  // namespace secretscan
