#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "secretscan/classify.hpp"
#include "secretscan/ingest.hpp"
#include "secretscan/patterns.hpp"
#include "secretscan/preprocess.hpp"

// Synthetic issue-report corpus with known ground truth. Bodies mix prose,
// noise from every cleaning-rule family, look-alike decoys (masked values,
// placeholders, digests, test keys) and a minority of planted credentials.
namespace secretscan::synth {

struct CorpusParams {
    std::size_t reports = 1000;
    double secret_rate = 0.10;      // share of reports carrying a planted secret
    double mean_decoys = 2.5;       // decoys per report
    std::uint64_t seed = 2024;
};

struct Corpus {
    std::vector<IssueReport> reports;
    // report id -> planted secret values
    std::map<std::string, std::vector<std::string>> secrets;
    // cleaning-rule name -> number of noise snippets of that family planted
    std::map<std::string, std::size_t> noise_families;

    std::size_t secret_count() const;
};

Corpus generate(const CorpusParams& params);

// True when the candidate text and a planted secret of its report overlap
// (one contains the other).
bool is_planted(const Corpus& corpus, const CandidateSecret& c);

struct LabeledWindow {
    CandidateSecret candidate;
    ContextWindow window;
    bool label = false;
};

// Cleans and scans the given reports, labels each candidate from ground truth.
std::vector<LabeledWindow> label_candidates(const Corpus& corpus, const std::vector<IssueReport>& reports,
                                            const RuleSet& rules, const PatternRegistry& patterns,
                                            std::size_t radius);

// Planted secrets (in `reports`) that no candidate covers.
std::size_t missed_secrets(const Corpus& corpus, const std::vector<IssueReport>& reports,
                           const std::vector<LabeledWindow>& labeled);

// Deterministic report-level split; returns {train, held_out}.
std::pair<std::vector<IssueReport>, std::vector<IssueReport>> split(const std::vector<IssueReport>& reports,
                                                                    double held_out_fraction, std::uint64_t seed);

}  // namespace secretscan::synth
