#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "secretscan/ingest.hpp"
#include "secretscan/regex.hpp"

namespace secretscan {

// Uncompiled rule as it appears in a rule file line: {name, pattern, order}.
struct RuleSpec {
    std::string name;
    std::string pattern;
    int order = 0;
};

struct CleaningRule {
    std::string name;
    Regex regex;
    int order = 0;
};

struct Removal {
    std::string rule_name;
    std::string removed;
    // Code points, relative to the text as it stood when the rule ran.
    Span span;
};

struct CleanResult {
    std::string cleaned;
    std::vector<Removal> removals;
};

// Ordered, immutable set of noise-removal rules.
class RuleSet {
public:
    RuleSet() = default;

    const std::vector<CleaningRule>& rules() const { return rules_; }
    std::size_t size() const { return rules_.size(); }
    bool empty() const { return rules_.empty(); }
    const CleaningRule* find(std::string_view name) const;

private:
    friend RuleSet compile_rules(std::vector<RuleSpec> specs);
    std::vector<CleaningRule> rules_;
};

// Sorts by ascending order. Throws ValidationError on a non-compiling pattern
// (naming the rule), a duplicate name, or a duplicate rank.
RuleSet compile_rules(std::vector<RuleSpec> specs);

// The issue-report noise rules: quotation marks, directory listings, shell
// blocks, saved-game dumps, URLs, dotted package names, Java stack frames,
// commit ids, file paths, SHA digests, build ids, UUID/GUID lists, event ids,
// labelled ids and hex values, screenshot names.
const std::vector<RuleSpec>& builtin_rule_specs();
RuleSet builtin_rules();

// JSON-Lines of {name, pattern, order}; blank lines ignored.
std::vector<RuleSpec> parse_rule_specs(std::string_view text);
RuleSet load_rules(const std::filesystem::path& path);

// Applies every rule once, in order, deleting each match.
CleanResult clean(std::string_view body, const RuleSet& rules);

}  // namespace secretscan
