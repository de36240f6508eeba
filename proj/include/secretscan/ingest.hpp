#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace secretscan {

enum class Category { bug, feature, question, documentation };

std::string_view to_string(Category c);
std::optional<Category> parse_category(std::string_view s);

// Half-open code-point range [start, end).
struct Span {
    std::size_t start = 0;
    std::size_t end = 0;

    std::size_t length() const { return end - start; }
    friend bool operator==(const Span&, const Span&) = default;
    friend auto operator<=>(const Span&, const Span&) = default;
};

struct IssueReport {
    std::string id;
    std::string title;
    std::string body;
    std::optional<Category> category;
    std::optional<std::string> author_association;

    friend bool operator==(const IssueReport&, const IssueReport&) = default;
};

struct LabeledCandidate {
    std::string report_id;
    std::string candidate_text;
    Span span;
    std::string pattern_name;
    bool label = false;

    friend bool operator==(const LabeledCandidate&, const LabeledCandidate&) = default;
};

enum class ReportFormat { csv, jsonl };

// Picks the format from the file extension (.csv, .jsonl/.json); throws on
// anything else.
ReportFormat format_from_path(const std::filesystem::path& path);

std::vector<IssueReport> parse_reports(std::string_view text, ReportFormat format);
std::string format_reports(const std::vector<IssueReport>& reports, ReportFormat format);

std::vector<IssueReport> load_reports(const std::filesystem::path& path, ReportFormat format);
void write_reports(const std::vector<IssueReport>& reports, const std::filesystem::path& path,
                   ReportFormat format);

// Labeled candidate datasets are JSON-Lines:
// {"report_id","candidate_text","start","end","pattern_name","label"}.
std::vector<LabeledCandidate> load_labeled_candidates(const std::filesystem::path& path);
void write_labeled_candidates(const std::vector<LabeledCandidate>& items,
                              const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace secretscan
