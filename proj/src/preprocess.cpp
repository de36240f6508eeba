#include "secretscan/preprocess.hpp"

#include <algorithm>
#include <set>

#include <json.hpp>

#include "secretscan/error.hpp"
#include "secretscan/unicode.hpp"

namespace secretscan {

const CleaningRule* RuleSet::find(std::string_view name) const {
    for (const auto& r : rules_) {
        if (r.name == name) return &r;
    }
    return nullptr;
}

RuleSet compile_rules(std::vector<RuleSpec> specs) {
    std::stable_sort(specs.begin(), specs.end(), [](const auto& a, const auto& b) { return a.order < b.order; });
    std::set<std::string> names;
    RuleSet out;
    for (std::size_t i = 0; i < specs.size(); ++i) {
        auto& s = specs[i];
        if (s.name.empty()) throw ValidationError("cleaning rule with empty name");
        if (!names.insert(s.name).second) throw ValidationError("duplicate cleaning rule name '" + s.name + "'");
        if (i > 0 && specs[i - 1].order == s.order) {
            throw ValidationError("cleaning rules '" + specs[i - 1].name + "' and '" + s.name + "' share order " +
                                  std::to_string(s.order));
        }
        try {
            out.rules_.push_back({s.name, Regex(std::move(s.pattern)), s.order});
        } catch (const ValidationError& e) {
            throw ValidationError("cleaning rule '" + s.name + "': " + e.what());
        }
    }
    return out;
}

std::vector<RuleSpec> parse_rule_specs(std::string_view text) {
    std::vector<RuleSpec> out;
    std::size_t pos = 0;
    std::size_t row = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        const auto line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++row;
        if (line.find_first_not_of(" \t\r") == std::string_view::npos) continue;
        try {
            const auto j = nlohmann::json::parse(line);
            out.push_back({j.at("name").get<std::string>(), j.at("pattern").get<std::string>(),
                           j.at("order").get<int>()});
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("rule file line " + std::to_string(row) + ": " + e.what());
        }
    }
    return out;
}

RuleSet load_rules(const std::filesystem::path& path) { return compile_rules(parse_rule_specs(read_file(path))); }

CleanResult clean(std::string_view body, const RuleSet& rules) {
    CleanResult result;
    std::string text(body);
    for (const auto& rule : rules.rules()) {
        std::vector<Regex::Match> hits;
        rule.regex.for_each_match(text, 0, [&](const Regex::Match& whole, const Regex::Match&) {
            if (whole.end > whole.begin) hits.push_back(whole);
            return true;
        });
        if (hits.empty()) continue;

        const unicode::OffsetIndex index(text);
        std::string next;
        next.reserve(text.size());
        std::size_t cursor = 0;
        for (const auto& h : hits) {
            next.append(text, cursor, h.begin - cursor);
            result.removals.push_back({rule.name, text.substr(h.begin, h.end - h.begin),
                                       {index.to_code_point(h.begin), index.to_code_point(h.end)}});
            cursor = h.end;
        }
        next.append(text, cursor, std::string::npos);
        text = std::move(next);
    }
    result.cleaned = std::move(text);
    return result;
}

}  // namespace secretscan
