#include "secretscan/classify.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <random>

#include <json.hpp>

#include "secretscan/error.hpp"
#include "secretscan/unicode.hpp"

namespace secretscan {

using nlohmann::json;

double entropy(std::string_view s) {
    const auto cps = unicode::decode(s);
    if (cps.empty()) return 0.0;
    std::map<char32_t, std::size_t> counts;
    for (char32_t c : cps) ++counts[c];
    const auto n = static_cast<double>(cps.size());
    double h = 0.0;
    for (const auto& [c, k] : counts) {
        const double p = static_cast<double>(k) / n;
        h -= p * std::log2(p);
    }
    return h;
}

const std::array<std::string_view, kFeatureCount>& feature_names() {
    static const std::array<std::string_view, kFeatureCount> names = {
        "candidate_entropy", "candidate_length", "digit_ratio",   "upper_ratio",    "lower_ratio",
        "symbol_ratio",      "mask_ratio",       "kw_password",   "kw_token",       "kw_key",
        "kw_secret",         "kw_auth",          "kw_session",    "kw_credential",  "assignment_shape",
        "context_length",    "hex_only",         "placeholder_marker",
    };
    return names;
}

namespace {

constexpr std::size_t kMinMaskRun = 3;

bool is_mask(char32_t c) { return c == U'x' || c == U'X' || c == U'*'; }

double mask_ratio(const std::u32string& s) {
    std::size_t masked = 0;
    for (std::size_t i = 0; i < s.size();) {
        if (!is_mask(s[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < s.size() && is_mask(s[j])) ++j;
        if (j - i >= kMinMaskRun) masked += j - i;
        i = j;
    }
    return static_cast<double>(masked) / static_cast<double>(s.size());
}

std::string ascii_lower(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

}  // namespace

FeatureVector featurize(const ContextWindow& w) {
    FeatureVector fv;
    fv.values.assign(kFeatureCount, 0.0);
    auto& v = fv.values;

    const auto window = unicode::decode(w.text);
    const std::u32string cand(window.begin() + static_cast<std::ptrdiff_t>(w.candidate_offset.start),
                              window.begin() + static_cast<std::ptrdiff_t>(w.candidate_offset.end));
    const auto n = static_cast<double>(cand.size());

    v[kCandidateEntropy] = entropy(unicode::encode(cand));
    v[kCandidateLength] = n;
    std::size_t digits = 0, upper = 0, lower = 0, hex = 0;
    for (char32_t c : cand) {
        if (c >= U'0' && c <= U'9') ++digits;
        else if (c >= U'A' && c <= U'Z') ++upper;
        else if (c >= U'a' && c <= U'z') ++lower;
        if ((c >= U'0' && c <= U'9') || (c >= U'a' && c <= U'f') || (c >= U'A' && c <= U'F')) ++hex;
    }
    if (n > 0) {
        v[kDigitRatio] = static_cast<double>(digits) / n;
        v[kUpperRatio] = static_cast<double>(upper) / n;
        v[kLowerRatio] = static_cast<double>(lower) / n;
        v[kSymbolRatio] = static_cast<double>(cand.size() - digits - upper - lower) / n;
        v[kMaskRatio] = mask_ratio(cand);
        v[kHexOnly] = hex == cand.size() ? 1.0 : 0.0;
    }

    const auto lowered_cand = ascii_lower(unicode::encode(cand));
    constexpr std::array<std::string_view, 9> markers = {"test", "example", "sample", "dummy", "your",
                                                         "here", "changeme", "placeholder", "fake"};
    v[kPlaceholderMarker] = std::any_of(markers.begin(), markers.end(), [&](std::string_view m) {
        return lowered_cand.find(m) != std::string::npos;
    }) ? 1.0 : 0.0;

    const auto lowered = ascii_lower(w.text);
    constexpr std::array<std::pair<Feature, std::string_view>, 7> keywords = {{
        {kKeywordPassword, "password"},
        {kKeywordToken, "token"},
        {kKeywordKey, "key"},
        {kKeywordSecret, "secret"},
        {kKeywordAuth, "auth"},
        {kKeywordSession, "session"},
        {kKeywordCredential, "credential"},
    }};
    for (const auto& [feature, word] : keywords) {
        v[feature] = lowered.find(word) != std::string::npos ? 1.0 : 0.0;
    }

    std::size_t i = w.candidate_offset.start;
    while (i > 0 && (window[i - 1] == U' ' || window[i - 1] == U'\t')) --i;
    v[kAssignmentShape] = (i > 0 && (window[i - 1] == U'=' || window[i - 1] == U':')) ? 1.0 : 0.0;
    v[kContextLength] = static_cast<double>(window.size() - cand.size());
    return fv;
}

std::string_view to_string(ClassWeight w) { return w == ClassWeight::balanced ? "balanced" : "none"; }

ClassWeight parse_class_weight(std::string_view s) {
    if (s == "balanced") return ClassWeight::balanced;
    if (s == "none") return ClassWeight::none;
    throw ValidationError("unknown class weighting '" + std::string(s) + "' (expected balanced or none)");
}

double sigmoid(double z) {
    if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
    const double e = std::exp(z);
    return e / (1.0 + e);
}

double ClassifierModel::logit(const FeatureVector& x) const {
    if (x.schema_version != schema_version || x.values.size() != weights.size()) {
        throw ValidationError("feature schema mismatch: model expects version " + std::to_string(schema_version) +
                              " with " + std::to_string(weights.size()) + " features, got version " +
                              std::to_string(x.schema_version) + " with " + std::to_string(x.values.size()));
    }
    double z = bias;
    for (std::size_t i = 0; i < weights.size(); ++i) z += weights[i] * x.values[i];
    return z;
}

LossGradient weighted_log_loss(const std::vector<std::vector<double>>& rows, const std::vector<bool>& labels,
                               const std::vector<double>& sample_weights, const std::vector<double>& weights,
                               double bias) {
    LossGradient out;
    out.grad_weights.assign(weights.size(), 0.0);
    double total_weight = 0.0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& x = rows[i];
        double z = bias;
        for (std::size_t k = 0; k < weights.size(); ++k) z += weights[k] * x[k];
        const double y = labels[i] ? 1.0 : 0.0;
        const double s = sample_weights[i];
        // softplus(z) - y*z, evaluated without overflow
        const double softplus = std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
        out.loss += s * (softplus - y * z);
        const double dz = s * (sigmoid(z) - y);
        for (std::size_t k = 0; k < weights.size(); ++k) out.grad_weights[k] += dz * x[k];
        out.grad_bias += dz;
        total_weight += s;
    }
    if (total_weight > 0) {
        out.loss /= total_weight;
        for (auto& g : out.grad_weights) g /= total_weight;
        out.grad_bias /= total_weight;
    }
    return out;
}

std::vector<double> class_sample_weights(const std::vector<bool>& labels, ClassWeight mode) {
    const auto n = static_cast<double>(labels.size());
    const auto positives = static_cast<double>(std::count(labels.begin(), labels.end(), true));
    const double w_pos = mode == ClassWeight::balanced ? n / (2.0 * positives) : 1.0;
    const double w_neg = mode == ClassWeight::balanced ? n / (2.0 * (n - positives)) : 1.0;
    std::vector<double> out;
    out.reserve(labels.size());
    for (bool l : labels) out.push_back(l ? w_pos : w_neg);
    return out;
}

ClassifierModel train(const std::vector<Example>& data, const TrainParams& hp, std::vector<double>* loss_history) {
    if (data.empty()) throw ValidationError("training data is empty");
    if (!(hp.learning_rate > 0) || !std::isfinite(hp.learning_rate)) {
        throw ValidationError("learning_rate must be positive");
    }
    if (hp.epochs < 0) throw ValidationError("epochs must be non-negative");
    if (!(hp.threshold > 0 && hp.threshold < 1)) throw ValidationError("threshold must lie in (0, 1)");

    const auto dims = data.front().features.values.size();
    const auto schema = data.front().features.schema_version;
    std::vector<bool> labels;
    labels.reserve(data.size());
    for (const auto& ex : data) {
        if (ex.features.values.size() != dims || ex.features.schema_version != schema) {
            throw ValidationError("training examples have inconsistent feature schemas");
        }
        labels.push_back(ex.label);
    }
    const auto positives = std::count(labels.begin(), labels.end(), true);
    if (positives == 0 || positives == static_cast<std::ptrdiff_t>(labels.size())) {
        throw ValidationError("training data contains a single class");
    }

    // Standardize columns; constant columns keep scale 1.
    std::vector<double> mean(dims, 0.0), scale(dims, 1.0);
    for (const auto& ex : data) {
        for (std::size_t k = 0; k < dims; ++k) mean[k] += ex.features.values[k];
    }
    for (auto& m : mean) m /= static_cast<double>(data.size());
    for (std::size_t k = 0; k < dims; ++k) {
        double var = 0.0;
        for (const auto& ex : data) var += std::pow(ex.features.values[k] - mean[k], 2);
        var /= static_cast<double>(data.size());
        if (var > 1e-12) scale[k] = std::sqrt(var);
    }
    std::vector<std::vector<double>> rows;
    rows.reserve(data.size());
    for (const auto& ex : data) {
        std::vector<double> r(dims);
        for (std::size_t k = 0; k < dims; ++k) r[k] = (ex.features.values[k] - mean[k]) / scale[k];
        rows.push_back(std::move(r));
    }

    const auto sample_weights = class_sample_weights(labels, hp.class_weight);
    std::mt19937_64 rng(hp.seed);
    std::uniform_real_distribution<double> init(-0.01, 0.01);
    std::vector<double> w(dims);
    for (auto& x : w) x = init(rng);
    double b = 0.0;

    for (int epoch = 0; epoch < hp.epochs; ++epoch) {
        const auto lg = weighted_log_loss(rows, labels, sample_weights, w, b);
        if (!std::isfinite(lg.loss)) {
            throw Error("training diverged: non-finite loss at epoch " + std::to_string(epoch));
        }
        if (loss_history) loss_history->push_back(lg.loss);
        for (std::size_t k = 0; k < dims; ++k) w[k] -= hp.learning_rate * lg.grad_weights[k];
        b -= hp.learning_rate * lg.grad_bias;
    }

    ClassifierModel model;
    model.weights.resize(dims);
    model.bias = b;
    for (std::size_t k = 0; k < dims; ++k) {
        model.weights[k] = w[k] / scale[k];
        model.bias -= w[k] * mean[k] / scale[k];
    }
    for (double x : model.weights) {
        if (!std::isfinite(x)) throw Error("training diverged: non-finite weights after final epoch");
    }
    model.threshold = hp.threshold;
    model.schema_version = schema;
    model.training_meta = hp;
    return model;
}

Verdict predict(const ClassifierModel& model, const ContextWindow& w, CandidateSecret candidate) {
    const double score = sigmoid(model.logit(featurize(w)));
    return {std::move(candidate), score, score >= model.threshold};
}

std::string model_to_json(const ClassifierModel& m) {
    json names = json::array();
    for (auto n : feature_names()) names.push_back(n);
    json j = {{"schema_version", m.schema_version},
              {"weights", m.weights},
              {"bias", m.bias},
              {"threshold", m.threshold},
              {"training_meta",
               {{"learning_rate", m.training_meta.learning_rate},
                {"epochs", m.training_meta.epochs},
                {"seed", m.training_meta.seed},
                {"class_weight", to_string(m.training_meta.class_weight)}}}};
    if (m.schema_version == kFeatureSchemaVersion) j["feature_names"] = names;
    return j.dump(2);
}

ClassifierModel model_from_json(std::string_view text) {
    ClassifierModel m;
    try {
        const auto j = json::parse(text);
        m.schema_version = j.at("schema_version").get<int>();
        m.weights = j.at("weights").get<std::vector<double>>();
        m.bias = j.at("bias").get<double>();
        m.threshold = j.at("threshold").get<double>();
        if (j.contains("training_meta")) {
            const auto& t = j.at("training_meta");
            m.training_meta.learning_rate = t.value("learning_rate", m.training_meta.learning_rate);
            m.training_meta.epochs = t.value("epochs", m.training_meta.epochs);
            m.training_meta.seed = t.value("seed", m.training_meta.seed);
            m.training_meta.class_weight = parse_class_weight(t.value("class_weight", std::string("balanced")));
        }
        m.training_meta.threshold = m.threshold;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed model file: ") + e.what());
    }
    if (!(m.threshold > 0 && m.threshold < 1)) throw ValidationError("model threshold must lie in (0, 1)");
    if (m.schema_version == kFeatureSchemaVersion && m.weights.size() != kFeatureCount) {
        throw ValidationError("model has " + std::to_string(m.weights.size()) + " weights, schema " +
                              std::to_string(kFeatureSchemaVersion) + " needs " + std::to_string(kFeatureCount));
    }
    return m;
}

void save_model(const ClassifierModel& m, const std::filesystem::path& path) { write_file(path, model_to_json(m)); }

ClassifierModel load_model(const std::filesystem::path& path) { return model_from_json(read_file(path)); }

}  // namespace secretscan
