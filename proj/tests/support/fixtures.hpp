#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "secretscan/ingest.hpp"
#include "secretscan/preprocess.hpp"

namespace fixtures {

struct CleaningCase {
    std::string rule;
    bool positive = false;
    std::string input;
    std::string expected;
};

inline std::vector<CleaningCase> cleaning_cases() {
    std::vector<CleaningCase> out;
    const auto text = secretscan::read_file(std::string(SECRETSCAN_FIXTURES) + "/cleaning.jsonl");
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        const auto line = text.substr(pos, nl - pos);
        pos = nl + 1;
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line);
        out.push_back({j.at("rule").get<std::string>(), j.at("kind") == "positive", j.at("input").get<std::string>(),
                       j.at("expected").get<std::string>()});
    }
    return out;
}

// A rule set holding just the named built-in rule.
inline secretscan::RuleSet single_rule(const std::string& name) {
    for (const auto& s : secretscan::builtin_rule_specs()) {
        if (s.name == name) return secretscan::compile_rules({s});
    }
    return secretscan::compile_rules({});
}

}  // namespace fixtures
