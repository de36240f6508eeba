#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "secretscan/ingest.hpp"
#include "secretscan/regex.hpp"

namespace secretscan {

// Pattern file line: {name, pattern, capture_group}.
struct PatternSpec {
    std::string name;
    std::string pattern;
    std::size_t capture_group = 0;
};

struct SecretPattern {
    std::string name;
    Regex regex;
    std::size_t capture_group = 0;
};

struct CandidateSecret {
    std::string report_id;
    std::string text;
    Span span;  // code points into the cleaned body
    std::string pattern_name;

    friend bool operator==(const CandidateSecret&, const CandidateSecret&) = default;
};

// Secret-detection patterns in stable (file) order. Immutable once built.
class PatternRegistry {
public:
    PatternRegistry() = default;

    const std::vector<SecretPattern>& patterns() const { return patterns_; }
    std::size_t size() const { return patterns_.size(); }

private:
    friend PatternRegistry compile_patterns(std::vector<PatternSpec> specs);
    std::vector<SecretPattern> patterns_;
};

// Throws ValidationError on a non-compiling pattern, a duplicate name, or a
// capture group the pattern does not define.
PatternRegistry compile_patterns(std::vector<PatternSpec> specs);

const std::vector<PatternSpec>& builtin_pattern_specs();
PatternRegistry builtin_patterns();

std::vector<PatternSpec> parse_pattern_specs(std::string_view text);
PatternRegistry load_patterns(const std::filesystem::path& path);

// All matches of every pattern, sorted by (start, pattern_name, end). Matches
// of one pattern never overlap each other; identical spans from different
// patterns are all kept.
std::vector<CandidateSecret> scan(std::string_view cleaned_body, const PatternRegistry& registry,
                                  std::string_view report_id = {});

}  // namespace secretscan
