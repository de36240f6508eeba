#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "secretscan/error.hpp"
#include "secretscan/ingest.hpp"
#include "secretscan/metrics.hpp"
#include "secretscan/patterns.hpp"

namespace secretscan {

struct CandidateKey {
    std::string report_id;
    Span span;
    std::string pattern_name;

    static CandidateKey of(const CandidateSecret& c) { return {c.report_id, c.span, c.pattern_name}; }
    std::string to_string() const;

    friend bool operator==(const CandidateKey&, const CandidateKey&) = default;
    friend auto operator<=>(const CandidateKey&, const CandidateKey&) = default;
};

struct LabelEntry {
    CandidateKey key;
    bool label = false;
};

// One rater's labels. Label files are CSV: report_id,start,end,pattern_name,label.
struct LabelFile {
    std::string rater_id;
    std::vector<LabelEntry> entries;

    // Throws ValidationError on a repeated key.
    void validate() const;
    std::map<CandidateKey, bool> as_map() const;
};

LabelFile parse_label_file(std::string_view text, std::string rater_id);
LabelFile load_label_file(const std::filesystem::path& path);
std::string format_label_file(const LabelFile& f);
void write_label_file(const LabelFile& f, const std::filesystem::path& path);

// Label template for raters: same columns, label left blank.
std::string format_label_template(const std::vector<CandidateSecret>& candidates);

// Draws floor(fraction * pool) candidates (at least one) without replacement,
// where the pool is `candidates` minus any key in `exclude`. Deterministic for
// fixed inputs. Throws ValidationError on an empty pool or a fraction outside
// (0, 1].
std::vector<CandidateSecret> sample_candidates(const std::vector<CandidateSecret>& candidates, double fraction,
                                               std::uint64_t seed, const std::set<CandidateKey>& exclude = {});

class UnresolvedDisagreements : public ValidationError {
public:
    explicit UnresolvedDisagreements(std::vector<CandidateKey> keys);
    const std::vector<CandidateKey>& keys() const { return keys_; }

private:
    std::vector<CandidateKey> keys_;
};

struct BenchmarkResult {
    std::vector<LabelEntry> entries;  // primary order
    std::optional<AgreementMatrix> agreement;
    std::vector<CandidateKey> disagreements;
};

// Cross-tabulates the primary/secondary overlap (primary = rater 1), demands a
// resolution for every disagreement, and emits primary labels overridden by
// the resolutions.
BenchmarkResult build_benchmark(const LabelFile& primary, const std::optional<LabelFile>& secondary,
                                const std::vector<LabelEntry>& resolutions = {});

// Pairs benchmark entries with their text, sliced from the cleaned bodies
// (report id -> cleaned body). Throws ValidationError for unknown reports or
// spans outside the body.
std::vector<LabeledCandidate> attach_text(const std::vector<LabelEntry>& entries,
                                          const std::map<std::string, std::string>& cleaned_bodies);

}  // namespace secretscan
