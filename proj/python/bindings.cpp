#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include <json.hpp>

#include "secretscan/classify.hpp"
#include "secretscan/cli.hpp"
#include "secretscan/error.hpp"
#include "secretscan/metrics.hpp"
#include "secretscan/patterns.hpp"
#include "secretscan/pipeline.hpp"
#include "secretscan/preprocess.hpp"
#include "secretscan/service.hpp"
#include "secretscan/unicode.hpp"
#include "secretscan/window.hpp"

namespace py = pybind11;
namespace ss = secretscan;

namespace {

ss::RuleSet rules_or_builtin(const std::optional<std::string>& path) {
    return path ? ss::load_rules(*path) : ss::builtin_rules();
}

ss::PatternRegistry patterns_or_builtin(const std::optional<std::string>& path) {
    return path ? ss::load_patterns(*path) : ss::builtin_patterns();
}

const ss::Pipeline& default_pipeline() {
    static const ss::Pipeline p(ss::builtin_rules(), ss::builtin_patterns(), ss::default_model());
    return p;
}

py::dict window_dict(const ss::ContextWindow& w) {
    py::dict d;
    d["text"] = w.text;
    d["radius"] = w.radius;
    d["candidate_offset"] = py::make_tuple(w.candidate_offset.start, w.candidate_offset.end);
    d["source_span"] = py::make_tuple(w.source_span.start, w.source_span.end);
    return d;
}

py::dict metrics_dict(const ss::MetricsReport& r) {
    py::dict d;
    d["precision"] = r.precision;
    d["recall"] = r.recall;
    d["f1"] = r.f1;
    d["f1_positive"] = r.f1_positive;
    d["f1_negative"] = r.f1_negative;
    d["f_beta"] = r.f_beta;
    d["beta"] = r.beta;
    d["confusion"] = py::dict(py::arg("tp") = r.confusion.tp, py::arg("fp") = r.confusion.fp,
                              py::arg("fn") = r.confusion.fn, py::arg("tn") = r.confusion.tn);
    return d;
}

ss::ContextWindow window_from(const std::string& text, std::size_t start, std::size_t end) {
    ss::ContextWindow w;
    w.text = text;
    w.candidate_offset = {start, end};
    w.source_span = {0, ss::unicode::length(text)};
    return w;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Secret-breach detection for issue reports";

    auto& error = py::register_exception<ss::Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<ss::IoError>(m, "IoError", error.ptr());
    py::register_exception<ss::ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ss::ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ss::RemoteError>(m, "RemoteError", error.ptr());

    m.def(
        "clean",
        [](const std::string& body, std::optional<std::string> rules_file) {
            const auto r = ss::clean(body, rules_or_builtin(rules_file));
            py::list removals;
            for (const auto& x : r.removals) {
                removals.append(py::dict(py::arg("rule") = x.rule_name, py::arg("removed") = x.removed,
                                         py::arg("start") = x.span.start, py::arg("end") = x.span.end));
            }
            return py::make_tuple(r.cleaned, removals);
        },
        py::arg("body"), py::arg("rules_file") = py::none(),
        "Apply the cleaning rules; returns (cleaned_text, removals).");

    m.def("rule_names", [] {
        std::vector<std::string> names;
        const auto rules = ss::builtin_rules();
        for (const auto& r : rules.rules()) names.push_back(r.name);
        return names;
    });

    m.def(
        "scan",
        [](const std::string& cleaned, const std::string& report_id, std::optional<std::string> patterns_file) {
            py::list out;
            for (const auto& c : ss::scan(cleaned, patterns_or_builtin(patterns_file), report_id)) {
                out.append(py::dict(py::arg("report_id") = c.report_id, py::arg("text") = c.text,
                                    py::arg("start") = c.span.start, py::arg("end") = c.span.end,
                                    py::arg("pattern") = c.pattern_name));
            }
            return out;
        },
        py::arg("cleaned"), py::arg("report_id") = "", py::arg("patterns_file") = py::none());

    m.def(
        "extract_window",
        [](const std::string& body, std::size_t start, std::size_t end, std::size_t radius) {
            return window_dict(ss::extract_window(body, {start, end}, radius));
        },
        py::arg("body"), py::arg("start"), py::arg("end"), py::arg("radius") = ss::kDefaultWindowRadius);

    m.def("entropy", [](const std::string& s) { return ss::entropy(s); }, py::arg("s"));

    m.def("feature_names", [] {
        std::vector<std::string> names;
        for (auto n : ss::feature_names()) names.emplace_back(n);
        return names;
    });

    m.def(
        "featurize",
        [](const std::string& window_text, std::size_t start, std::size_t end) {
            return ss::featurize(window_from(window_text, start, end)).values;
        },
        py::arg("window_text"), py::arg("start"), py::arg("end"));

    m.def(
        "train",
        [](const std::vector<std::vector<double>>& rows, const std::vector<bool>& labels, double learning_rate,
           std::size_t epochs, std::uint64_t seed, const std::string& class_weight, double threshold) {
            if (rows.size() != labels.size()) throw ss::ValidationError("rows and labels differ in length");
            std::vector<ss::Example> data;
            for (std::size_t i = 0; i < rows.size(); ++i) data.push_back({{rows[i], ss::kFeatureSchemaVersion}, labels[i]});
            ss::TrainParams hp;
            hp.learning_rate = learning_rate;
            hp.epochs = epochs;
            hp.seed = seed;
            hp.class_weight = ss::parse_class_weight(class_weight);
            hp.threshold = threshold;
            return ss::model_to_json(ss::train(data, hp));
        },
        py::arg("rows"), py::arg("labels"), py::arg("learning_rate") = ss::TrainParams{}.learning_rate,
        py::arg("epochs") = ss::TrainParams{}.epochs, py::arg("seed") = ss::TrainParams{}.seed,
        py::arg("class_weight") = "balanced", py::arg("threshold") = 0.5,
        "Train on feature rows; returns the model as JSON text.");

    m.def(
        "predict",
        [](const std::string& window_text, std::size_t start, std::size_t end, std::optional<std::string> model_json) {
            const auto model = model_json ? ss::model_from_json(*model_json) : ss::default_model();
            const auto v = ss::predict(model, window_from(window_text, start, end));
            return py::make_tuple(v.score, v.is_breach);
        },
        py::arg("window_text"), py::arg("start"), py::arg("end"), py::arg("model_json") = py::none(),
        "Score one window; returns (score, is_breach).");

    m.def("f_beta_from", &ss::f_beta_from, py::arg("precision"), py::arg("recall"), py::arg("beta"));

    m.def(
        "compute_metrics",
        [](const std::vector<bool>& verdicts, const std::vector<bool>& labels, double beta) {
            return metrics_dict(ss::compute_metrics(ss::confusion_from(verdicts, labels), beta));
        },
        py::arg("verdicts"), py::arg("labels"), py::arg("beta"));

    m.def(
        "cohen_kappa",
        [](std::uint64_t both_pos, std::uint64_t r1pos_r2neg, std::uint64_t r1neg_r2pos, std::uint64_t both_neg) {
            return ss::cohen_kappa({both_pos, r1pos_r2neg, r1neg_r2pos, both_neg});
        },
        py::arg("both_pos"), py::arg("r1pos_r2neg"), py::arg("r1neg_r2pos"), py::arg("both_neg"));

    m.def(
        "detect",
        [](const std::string& text) {
            const auto reply = ss::handle_detect(ss::DetectRequest{text}, default_pipeline());
            return py::module_::import("json").attr("loads")(ss::to_json(reply));
        },
        py::arg("text"), "Run the full pipeline with the bundled model; returns the /detect response.");

    m.def(
        "handle_detect_http",
        [](const std::string& body) {
            const auto r = ss::handle_detect_http(body, default_pipeline());
            return py::make_tuple(r.status, r.body);
        },
        py::arg("body"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = 0;
            {
                py::gil_scoped_release release;
                code = ss::run_cli(args, out, err);
            }
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run a CLI subcommand; returns (exit_code, stdout, stderr).");
}
