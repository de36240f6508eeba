#include "secretscan/cli.hpp"

#include <csignal>
#include <thread>

#include <pthread.h>
#include <signal.h>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <set>

#include <CLI11.hpp>
#include <json.hpp>

#include "secretscan/bench.hpp"
#include "secretscan/classify.hpp"
#include "secretscan/csv.hpp"
#include "secretscan/githubclient.hpp"
#include "secretscan/metrics.hpp"
#include "secretscan/pipeline.hpp"
#include "secretscan/service.hpp"
#include "secretscan/synth.hpp"
#include "secretscan/unicode.hpp"

namespace secretscan {

using nlohmann::json;

namespace {

struct CommonOptions {
    std::string rules_file;
    std::string patterns_file;
    std::size_t radius = kDefaultWindowRadius;
};

void add_common(CLI::App* cmd, CommonOptions& o, bool with_patterns = true) {
    cmd->add_option("--rules", o.rules_file, "Cleaning rule file (JSON-Lines); built-in rules when omitted")
        ->check(CLI::ExistingFile);
    if (with_patterns) {
        cmd->add_option("--patterns", o.patterns_file, "Secret pattern file (JSON-Lines); built-in set when omitted")
            ->check(CLI::ExistingFile);
    }
    cmd->add_option("--radius", o.radius, "Context window radius in characters")->capture_default_str();
}

RuleSet rules_of(const CommonOptions& o) { return o.rules_file.empty() ? builtin_rules() : load_rules(o.rules_file); }

PatternRegistry patterns_of(const CommonOptions& o) {
    return o.patterns_file.empty() ? builtin_patterns() : load_patterns(o.patterns_file);
}

std::vector<IssueReport> reports_of(const std::string& path, const std::string& format) {
    const auto fmt = format.empty() ? format_from_path(path)
                                    : (format == "csv" ? ReportFormat::csv : ReportFormat::jsonl);
    return load_reports(path, fmt);
}

std::map<std::string, std::string> cleaned_bodies(const std::vector<IssueReport>& reports, const RuleSet& rules) {
    std::map<std::string, std::string> out;
    for (const auto& r : reports) out[r.id] = clean(r.body, rules).cleaned;
    return out;
}

void emit(std::ostream& out, const std::string& path, const std::string& contents) {
    if (path.empty() || path == "-") {
        out << contents << '\n';
    } else {
        write_file(path, contents + "\n");
    }
}

// Keys from a label file or label template (the label column may be blank).
std::set<CandidateKey> keys_of(const std::string& path) {
    const auto records = csv::parse(read_file(path));
    std::set<CandidateKey> keys;
    if (records.empty()) return keys;
    const csv::Header h(records.front());
    const auto r = h.require("report_id");
    const auto s = h.require("start");
    const auto e = h.require("end");
    const auto p = h.require("pattern_name");
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& f = records[i].fields;
        keys.insert({f.at(r), {std::stoull(f.at(s)), std::stoull(f.at(e))}, f.at(p)});
    }
    return keys;
}

std::vector<LabeledCandidate> labeled_from_files(const std::string& reports_path, const std::string& format,
                                                 const std::string& labels_path, const std::string& labeled_path,
                                                 const RuleSet& rules,
                                                 std::map<std::string, std::string>& bodies) {
    bodies = cleaned_bodies(reports_of(reports_path, format), rules);
    if (!labeled_path.empty()) {
        auto items = load_labeled_candidates(labeled_path);
        for (const auto& c : items) {
            const auto it = bodies.find(c.report_id);
            if (it == bodies.end()) throw ValidationError("no report with id '" + c.report_id + "'");
            if (unicode::substr(it->second, c.span.start, c.span.end) != c.candidate_text) {
                throw ValidationError("candidate text of " + c.report_id + " does not match the cleaned body");
            }
        }
        return items;
    }
    return attach_text(load_label_file(labels_path).entries, bodies);
}

json verdict_json(const Verdict& v) {
    return {{"start", v.candidate.span.start}, {"end", v.candidate.span.end}, {"matched", v.candidate.text},
            {"pattern", v.candidate.pattern_name}, {"score", v.score}, {"is_breach", v.is_breach}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Secret-breach detection for issue reports", "secretscan"};
    app.require_subcommand(1);
    app.failure_message(CLI::FailureMessage::help);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    // scan
    CommonOptions scan_common;
    std::string scan_input, scan_format, scan_model, scan_output, scan_endpoint;
    std::optional<double> scan_threshold;
    int scan_timeout_ms = 5000;
    auto* scan_cmd = app.add_subcommand("scan", "Clean, scan and classify issue reports; prints verdict JSON");
    scan_cmd->add_option("-i,--input", scan_input, "Reports file (.csv or .jsonl)")->required()->check(CLI::ExistingFile);
    scan_cmd->add_option("--format", scan_format, "Report format")->check(CLI::IsMember({"csv", "jsonl"}));
    add_common(scan_cmd, scan_common);
    scan_cmd->add_option("--model", scan_model, "Model file; bundled default model when omitted")->check(CLI::ExistingFile);
    scan_cmd->add_option("--threshold", scan_threshold, "Decision threshold override")->check(CLI::Range(0.0, 1.0));
    scan_cmd->add_option("--endpoint", scan_endpoint, "Remote classifier URL (replaces the local model)");
    scan_cmd->add_option("--timeout-ms", scan_timeout_ms, "Remote classifier timeout")->check(CLI::PositiveNumber);
    scan_cmd->add_option("-o,--output", scan_output, "Output file (stdout when omitted)");

    // train
    CommonOptions train_common;
    std::string train_reports, train_format, train_labels, train_labeled, train_output;
    bool train_synthetic = false;
    TrainParams hp;
    std::string class_weight = "balanced";
    auto* train_cmd = app.add_subcommand("train", "Train the built-in classifier on labeled candidates");
    train_cmd->add_option("--reports", train_reports, "Reports file the labels refer to")->check(CLI::ExistingFile);
    train_cmd->add_option("--format", train_format, "Report format")->check(CLI::IsMember({"csv", "jsonl"}));
    auto* labels_opt = train_cmd->add_option("--labels", train_labels, "Label file (CSV)")->check(CLI::ExistingFile);
    auto* labeled_opt = train_cmd->add_option("--labeled", train_labeled, "Labeled candidates (JSON-Lines)")->check(CLI::ExistingFile);
    auto* synth_opt = train_cmd->add_flag("--synthetic", train_synthetic, "Train on the bundled synthetic corpus");
    labels_opt->excludes(labeled_opt)->excludes(synth_opt);
    labeled_opt->excludes(synth_opt);
    add_common(train_cmd, train_common);
    train_cmd->add_option("--learning-rate", hp.learning_rate)->check(CLI::PositiveNumber)->capture_default_str();
    train_cmd->add_option("--epochs", hp.epochs)->check(CLI::NonNegativeNumber)->capture_default_str();
    train_cmd->add_option("--seed", hp.seed)->capture_default_str();
    train_cmd->add_option("--class-weight", class_weight)->check(CLI::IsMember({"balanced", "none"}))->capture_default_str();
    train_cmd->add_option("--threshold", hp.threshold)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    train_cmd->add_option("-o,--output", train_output, "Model file to write")->required();

    // evaluate
    CommonOptions eval_common;
    std::string eval_reports, eval_format, eval_labels, eval_model, eval_predictions;
    bool eval_baseline = false;
    double eval_beta = 0.0;
    std::optional<double> eval_threshold;
    auto* eval_cmd = app.add_subcommand("evaluate", "Score a detector against a labeled benchmark; prints metrics JSON");
    eval_cmd->add_option("--labels", eval_labels, "Gold label file (CSV)")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--beta", eval_beta, "F-beta weight (required)")->required()->check(CLI::PositiveNumber);
    eval_cmd->add_option("--reports", eval_reports, "Reports file (needed with --model)")->check(CLI::ExistingFile);
    eval_cmd->add_option("--format", eval_format, "Report format")->check(CLI::IsMember({"csv", "jsonl"}));
    auto* m_opt = eval_cmd->add_option("--model", eval_model, "Model file")->check(CLI::ExistingFile);
    auto* p_opt = eval_cmd->add_option("--predictions", eval_predictions, "Predicted labels (label-file CSV)")->check(CLI::ExistingFile);
    auto* b_opt = eval_cmd->add_flag("--regex-baseline", eval_baseline, "Predict every candidate positive");
    m_opt->excludes(p_opt)->excludes(b_opt);
    p_opt->excludes(b_opt);
    eval_cmd->add_option("--threshold", eval_threshold, "Decision threshold override")->check(CLI::Range(0.0, 1.0));
    add_common(eval_cmd, eval_common, false);

    // sample
    CommonOptions sample_common;
    std::string sample_reports, sample_format, sample_output;
    double sample_fraction = 0.01;
    std::uint64_t sample_seed = 0;
    std::vector<std::string> sample_exclude;
    auto* sample_cmd = app.add_subcommand("sample", "Randomly sample candidates into a label template CSV");
    sample_cmd->add_option("--reports", sample_reports, "Reports file")->required()->check(CLI::ExistingFile);
    sample_cmd->add_option("--format", sample_format, "Report format")->check(CLI::IsMember({"csv", "jsonl"}));
    sample_cmd->add_option("--fraction", sample_fraction)->check(CLI::Range(0.0, 1.0))->capture_default_str();
    sample_cmd->add_option("--seed", sample_seed)->capture_default_str();
    sample_cmd->add_option("--exclude", sample_exclude, "Label files/templates whose keys were already sampled")
        ->check(CLI::ExistingFile);
    sample_cmd->add_option("-o,--output", sample_output, "Template file (stdout when omitted)");
    add_common(sample_cmd, sample_common);

    // kappa
    std::string rater1, rater2;
    auto* kappa_cmd = app.add_subcommand("kappa", "Cohen's kappa between two raters' label files");
    kappa_cmd->add_option("rater1", rater1, "Rater 1 label file")->required()->check(CLI::ExistingFile);
    kappa_cmd->add_option("rater2", rater2, "Rater 2 label file")->required()->check(CLI::ExistingFile);

    // benchmark
    std::string bench_primary, bench_secondary, bench_resolutions, bench_output;
    auto* bench_cmd = app.add_subcommand("benchmark", "Merge rater labels and resolutions into the final benchmark");
    bench_cmd->add_option("--primary", bench_primary)->required()->check(CLI::ExistingFile);
    bench_cmd->add_option("--secondary", bench_secondary)->check(CLI::ExistingFile);
    bench_cmd->add_option("--resolutions", bench_resolutions)->check(CLI::ExistingFile);
    bench_cmd->add_option("-o,--output", bench_output, "Benchmark label file")->required();

    // crawl
    std::string crawl_repo, crawl_output, crawl_format, crawl_token, crawl_base = std::string(kDefaultApiBase);
    std::string crawl_policy = "abort", crawl_resume;
    std::size_t crawl_max = 100;
    auto* crawl_cmd = app.add_subcommand("crawl", "Fetch issue reports of a repository");
    crawl_cmd->add_option("--repo", crawl_repo, "owner/name")->required();
    crawl_cmd->add_option("--max-issues", crawl_max)->check(CLI::PositiveNumber)->capture_default_str();
    crawl_cmd->add_option("-o,--output", crawl_output, "Reports file (.csv or .jsonl)")->required();
    crawl_cmd->add_option("--format", crawl_format, "Report format")->check(CLI::IsMember({"csv", "jsonl"}));
    crawl_cmd->add_option("--token", crawl_token, "API token (default: $SCANNER_API_TOKEN)");
    crawl_cmd->add_option("--api-base", crawl_base)->capture_default_str();
    crawl_cmd->add_option("--on-rate-limit", crawl_policy)->check(CLI::IsMember({"wait", "abort"}))->capture_default_str();
    crawl_cmd->add_option("--resume", crawl_resume, "Cursor printed by an aborted crawl");

    // serve
    CommonOptions serve_common;
    ServiceConfig service_config;
    std::string serve_model, serve_endpoint;
    std::optional<double> serve_threshold;
    auto* serve_cmd = app.add_subcommand("serve", "Run the detection HTTP service");
    serve_cmd->add_option("--host", service_config.host)->capture_default_str();
    serve_cmd->add_option("--port", service_config.port)->check(CLI::Range(0, 65535))->capture_default_str();
    serve_cmd->add_option("--model", serve_model, "Model file; bundled default model when omitted")->check(CLI::ExistingFile);
    serve_cmd->add_option("--threshold", serve_threshold)->check(CLI::Range(0.0, 1.0));
    serve_cmd->add_option("--endpoint", serve_endpoint, "Remote classifier URL");
    serve_cmd->add_option("--cors-origin", service_config.cors_origin)->capture_default_str();
    serve_cmd->add_option("--max-body", service_config.max_body, "Request size limit in bytes")->capture_default_str();
    add_common(serve_cmd, serve_common);

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*scan_cmd) {
            const auto reports = reports_of(scan_input, scan_format);
            PipelineConfig cfg{scan_common.radius, scan_threshold, std::nullopt, std::chrono::milliseconds(scan_timeout_ms)};
            if (!scan_endpoint.empty()) cfg.remote_endpoint = scan_endpoint;
            const Pipeline pipeline(rules_of(scan_common), patterns_of(scan_common),
                                    scan_model.empty() ? default_model() : load_model(scan_model), cfg);
            json results = json::array();
            for (const auto& r : reports) {
                const auto outcome = pipeline.run(r.body, r.id);
                json cands = json::array();
                for (const auto& v : outcome.verdicts) cands.push_back(verdict_json(v));
                results.push_back({{"report_id", r.id},
                                   {"breach", outcome.breach},
                                   {"cleaned_text_length", unicode::length(outcome.cleaned)},
                                   {"candidates", cands}});
            }
            emit(out, scan_output, results.dump(2));
            err << "scanned " << reports.size() << " report(s)\n";
        } else if (*train_cmd) {
            hp.class_weight = parse_class_weight(class_weight);
            const auto rules = rules_of(train_common);
            std::vector<Example> data;
            if (train_synthetic) {
                const auto corpus = synth::generate({});
                for (const auto& lw : synth::label_candidates(corpus, corpus.reports, rules, patterns_of(train_common),
                                                              train_common.radius)) {
                    data.push_back({featurize(lw.window), lw.label});
                }
            } else {
                if (train_reports.empty() || (train_labels.empty() && train_labeled.empty())) {
                    err << "train: --reports with --labels or --labeled (or --synthetic) is required\n";
                    return kExitUsage;
                }
                std::map<std::string, std::string> bodies;
                for (const auto& c : labeled_from_files(train_reports, train_format, train_labels, train_labeled, rules, bodies)) {
                    data.push_back({featurize(extract_window(bodies.at(c.report_id), c.span, train_common.radius)), c.label});
                }
            }
            const auto model = train(data, hp);
            save_model(model, train_output);
            err << "trained on " << data.size() << " example(s); model written to " << train_output << '\n';
            out << json{{"examples", data.size()}, {"model", train_output}}.dump() << '\n';
        } else if (*eval_cmd) {
            const auto gold = load_label_file(eval_labels);
            std::vector<bool> labels, verdicts;
            if (!eval_predictions.empty()) {
                const auto predicted = load_label_file(eval_predictions).as_map();
                for (const auto& e : gold.entries) {
                    const auto it = predicted.find(e.key);
                    if (it == predicted.end()) throw ValidationError("no prediction for " + e.key.to_string());
                    labels.push_back(e.label);
                    verdicts.push_back(it->second);
                }
            } else if (eval_baseline) {
                for (const auto& e : gold.entries) {
                    labels.push_back(e.label);
                    verdicts.push_back(true);
                }
            } else {
                if (eval_reports.empty()) {
                    err << "evaluate: --reports is required unless --predictions or --regex-baseline is given\n";
                    return kExitUsage;
                }
                const auto rules = rules_of(eval_common);
                const auto bodies = cleaned_bodies(reports_of(eval_reports, eval_format), rules);
                auto model = eval_model.empty() ? default_model() : load_model(eval_model);
                if (eval_threshold) model.threshold = *eval_threshold;
                for (const auto& c : attach_text(gold.entries, bodies)) {
                    const auto w = extract_window(bodies.at(c.report_id), c.span, eval_common.radius);
                    labels.push_back(c.label);
                    verdicts.push_back(predict(model, w).is_breach);
                }
            }
            out << to_json(compute_metrics(confusion_from(verdicts, labels), eval_beta)) << '\n';
        } else if (*sample_cmd) {
            if (!(sample_fraction > 0.0)) {
                err << "sample: --fraction must be in (0, 1]\n";
                return kExitUsage;
            }
            const auto rules = rules_of(sample_common);
            const auto patterns = patterns_of(sample_common);
            std::vector<CandidateSecret> all;
            for (const auto& r : reports_of(sample_reports, sample_format)) {
                for (auto& c : scan(clean(r.body, rules).cleaned, patterns, r.id)) all.push_back(std::move(c));
            }
            std::set<CandidateKey> exclude;
            for (const auto& f : sample_exclude) exclude.merge(keys_of(f));
            const auto sampled = sample_candidates(all, sample_fraction, sample_seed, exclude);
            const auto tmpl = format_label_template(sampled);
            if (sample_output.empty()) {
                out << tmpl;
            } else {
                write_file(sample_output, tmpl);
            }
            err << "sampled " << sampled.size() << " of " << all.size() << " candidate(s)\n";
        } else if (*kappa_cmd) {
            const auto r1 = load_label_file(rater1);
            auto r2 = load_label_file(rater2);
            const auto m1 = r1.as_map();
            AgreementMatrix m;
            for (const auto& e : r2.entries) {
                const auto it = m1.find(e.key);
                if (it == m1.end()) continue;
                if (it->second && e.label) ++m.both_pos;
                else if (it->second) ++m.r1pos_r2neg;
                else if (e.label) ++m.r1neg_r2pos;
                else ++m.both_neg;
            }
            if (m.total() == 0) throw ValidationError("label files share no candidates");
            out << json{{"kappa", cohen_kappa(m)},
                        {"overlap", m.total()},
                        {"disagreements", m.disagreements()},
                        {"agreement",
                         {{"both_pos", m.both_pos},
                          {"r1pos_r2neg", m.r1pos_r2neg},
                          {"r1neg_r2pos", m.r1neg_r2pos},
                          {"both_neg", m.both_neg}}}}
                       .dump()
                << '\n';
        } else if (*bench_cmd) {
            std::optional<LabelFile> secondary;
            if (!bench_secondary.empty()) secondary = load_label_file(bench_secondary);
            std::vector<LabelEntry> resolutions;
            if (!bench_resolutions.empty()) resolutions = load_label_file(bench_resolutions).entries;
            const auto result = build_benchmark(load_label_file(bench_primary), secondary, resolutions);
            LabelFile merged{"benchmark", result.entries};
            write_label_file(merged, bench_output);
            json summary = {{"entries", result.entries.size()}, {"disagreements", result.disagreements.size()}};
            if (result.agreement) summary["kappa"] = cohen_kappa(*result.agreement);
            out << summary.dump() << '\n';
        } else if (*crawl_cmd) {
            CrawlOptions opts;
            opts.api_base = crawl_base;
            opts.on_rate_limit = crawl_policy == "wait" ? RateLimitPolicy::wait : RateLimitPolicy::abort;
            if (!crawl_resume.empty()) opts.resume_cursor = crawl_resume;
            const auto token = crawl_token.empty() ? token_from_env() : std::optional<std::string>(crawl_token);
            const auto fmt = crawl_format.empty() ? format_from_path(crawl_output)
                                                  : (crawl_format == "csv" ? ReportFormat::csv : ReportFormat::jsonl);
            try {
                const auto reports = crawl_issues(RepoRef::parse(crawl_repo), token, crawl_max, opts);
                write_reports(reports, crawl_output, fmt);
                out << json{{"reports", reports.size()}, {"output", crawl_output}}.dump() << '\n';
            } catch (const RateLimitError& e) {
                write_reports(e.partial(), crawl_output, fmt);
                out << json{{"reports", e.partial().size()}, {"output", crawl_output}, {"resume", e.cursor()},
                            {"rate_limit_reset", e.reset_epoch()}}
                           .dump()
                    << '\n';
                err << "crawl: " << e.what() << '\n';
                return kExitRuntime;
            }
        } else if (*serve_cmd) {
            PipelineConfig cfg{serve_common.radius, serve_threshold, std::nullopt, std::chrono::milliseconds(5000)};
            if (!serve_endpoint.empty()) cfg.remote_endpoint = serve_endpoint;
            auto pipeline = std::make_shared<const Pipeline>(
                rules_of(serve_common), patterns_of(serve_common),
                serve_model.empty() ? default_model() : load_model(serve_model), cfg);
            Service service(pipeline, service_config);
            const int port = service.bind();
            err << "listening on " << service_config.host << ":" << port << '\n';
            // Block the stop signals in every server thread and wait for them on a dedicated one.
            sigset_t stop_signals;
            sigemptyset(&stop_signals);
            sigaddset(&stop_signals, SIGINT);
            sigaddset(&stop_signals, SIGTERM);
            sigset_t previous;
            pthread_sigmask(SIG_BLOCK, &stop_signals, &previous);
            std::thread waiter([&] {
                int sig = 0;
                sigwait(&stop_signals, &sig);
                service.stop();
            });
            service.serve();
            // serve() can also return on its own; wake the waiter in that case.
            pthread_kill(waiter.native_handle(), SIGTERM);
            waiter.join();
            pthread_sigmask(SIG_SETMASK, &previous, nullptr);
        }
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
    return kExitOk;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, out, err);
}

}  // namespace secretscan
