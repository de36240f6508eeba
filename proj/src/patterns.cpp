#include "secretscan/patterns.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <tuple>

#include <json.hpp>

#include "secretscan/error.hpp"
#include "secretscan/unicode.hpp"

namespace secretscan {

PatternRegistry compile_patterns(std::vector<PatternSpec> specs) {
    PatternRegistry out;
    std::set<std::string> names;
    for (auto& s : specs) {
        if (s.name.empty()) throw ValidationError("secret pattern with empty name");
        if (!names.insert(s.name).second) throw ValidationError("duplicate secret pattern name '" + s.name + "'");
        std::optional<Regex> re;
        try {
            re.emplace(std::move(s.pattern));
        } catch (const ValidationError& e) {
            throw ValidationError("secret pattern '" + s.name + "': " + e.what());
        }
        if (s.capture_group > re->group_count()) {
            throw ValidationError("secret pattern '" + s.name + "': capture_group " + std::to_string(s.capture_group) +
                                  " but pattern has " + std::to_string(re->group_count()) + " group(s)");
        }
        out.patterns_.push_back({s.name, std::move(*re), s.capture_group});
    }
    return out;
}

std::vector<PatternSpec> parse_pattern_specs(std::string_view text) {
    std::vector<PatternSpec> out;
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
                           j.value("capture_group", std::size_t{0})});
        } catch (const nlohmann::json::exception& e) {
            throw ParseError("pattern file line " + std::to_string(row) + ": " + e.what());
        }
    }
    return out;
}

PatternRegistry load_patterns(const std::filesystem::path& path) {
    return compile_patterns(parse_pattern_specs(read_file(path)));
}

std::vector<CandidateSecret> scan(std::string_view cleaned_body, const PatternRegistry& registry,
                                  std::string_view report_id) {
    std::vector<CandidateSecret> out;
    if (cleaned_body.empty()) return out;
    const unicode::OffsetIndex index(cleaned_body);
    for (const auto& p : registry.patterns()) {
        p.regex.for_each_match(cleaned_body, p.capture_group, [&](const Regex::Match&, const Regex::Match& sel) {
            if (!sel.matched || sel.end <= sel.begin) return true;
            const auto start = index.to_code_point(sel.begin);
            // Round a partial trailing code point up to its end.
            const auto end = index.is_boundary(sel.end) ? index.to_code_point(sel.end) : index.to_code_point(sel.end) + 1;
            const auto b0 = index.to_byte(start);
            out.push_back({std::string(report_id), std::string(cleaned_body.substr(b0, index.to_byte(end) - b0)),
                           {start, end}, p.name});
            return true;
        });
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return std::tie(a.span.start, a.pattern_name, a.span.end) < std::tie(b.span.start, b.pattern_name, b.span.end);
    });
    out.erase(std::unique(out.begin(), out.end(),
                          [](const auto& a, const auto& b) { return a.span == b.span && a.pattern_name == b.pattern_name; }),
              out.end());
    return out;
}

}  // namespace secretscan
