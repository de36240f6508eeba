#include "secretscan/metrics.hpp"

#include <cmath>

#include <json.hpp>

#include "secretscan/error.hpp"

namespace secretscan {

ConfusionMatrix confusion_from(const std::vector<bool>& verdicts, const std::vector<bool>& labels) {
    if (verdicts.size() != labels.size()) {
        throw ValidationError("length mismatch: " + std::to_string(verdicts.size()) + " verdicts vs " +
                              std::to_string(labels.size()) + " labels");
    }
    if (verdicts.empty()) throw ValidationError("cannot build a confusion matrix from empty input");
    ConfusionMatrix cm;
    for (std::size_t i = 0; i < verdicts.size(); ++i) {
        if (labels[i]) {
            verdicts[i] ? ++cm.tp : ++cm.fn;
        } else {
            verdicts[i] ? ++cm.fp : ++cm.tn;
        }
    }
    return cm;
}

double safe_ratio(double num, double den) { return den == 0.0 ? 0.0 : num / den; }

double f_beta_from(double precision, double recall, double beta) {
    const double b2 = beta * beta;
    return safe_ratio((1.0 + b2) * precision * recall, b2 * precision + recall);
}

MetricsReport compute_metrics(const ConfusionMatrix& cm, double beta) {
    if (cm.total() == 0) throw ValidationError("confusion matrix is empty");
    if (!(beta > 0) || !std::isfinite(beta)) throw ValidationError("beta must be a positive finite number");

    const auto tp = static_cast<double>(cm.tp);
    const auto fp = static_cast<double>(cm.fp);
    const auto fn = static_cast<double>(cm.fn);
    const auto tn = static_cast<double>(cm.tn);

    MetricsReport r;
    r.confusion = cm;
    r.beta = beta;
    r.precision = safe_ratio(tp, tp + fp);
    r.recall = safe_ratio(tp, tp + fn);
    r.f1 = f_beta_from(r.precision, r.recall, 1.0);
    r.f1_positive = r.f1;
    r.f1_negative = f_beta_from(safe_ratio(tn, tn + fn), safe_ratio(tn, tn + fp), 1.0);
    r.f_beta = f_beta_from(r.precision, r.recall, beta);
    return r;
}

double cohen_kappa(const AgreementMatrix& m) {
    if (m.total() == 0) throw ValidationError("agreement matrix is empty");
    const auto n = static_cast<double>(m.total());
    const auto a = static_cast<double>(m.both_pos);
    const auto b = static_cast<double>(m.r1pos_r2neg);
    const auto c = static_cast<double>(m.r1neg_r2pos);
    const auto d = static_cast<double>(m.both_neg);
    const double p_o = (a + d) / n;
    const double r1_pos = (a + b) / n;
    const double r2_pos = (a + c) / n;
    const double p_e = r1_pos * r2_pos + (1.0 - r1_pos) * (1.0 - r2_pos);
    if (p_e == 1.0) return 1.0;
    return (p_o - p_e) / (1.0 - p_e);
}

std::string to_json(const MetricsReport& r) {
    const nlohmann::json j = {
        {"precision", r.precision},
        {"recall", r.recall},
        {"f1", r.f1},
        {"f1_positive", r.f1_positive},
        {"f1_negative", r.f1_negative},
        {"f_beta", r.f_beta},
        {"beta", r.beta},
        {"confusion", {{"tp", r.confusion.tp}, {"fp", r.confusion.fp}, {"fn", r.confusion.fn}, {"tn", r.confusion.tn}}},
    };
    return j.dump(2);
}

}  // namespace secretscan
