#include "secretscan/ingest.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "secretscan/csv.hpp"
#include "secretscan/error.hpp"
#include "secretscan/unicode.hpp"

namespace secretscan {

using nlohmann::json;

namespace {

const std::vector<std::string> kReportColumns = {"label", "id", "title", "body", "author_association"};

void validate_report(const IssueReport& r, std::size_t row) {
    if (r.id.empty()) throw ParseError("malformed record at row " + std::to_string(row) + ": empty id");
    for (const auto* field : {&r.id, &r.title, &r.body}) {
        if (!unicode::is_valid_utf8(*field)) {
            throw ParseError("malformed record at row " + std::to_string(row) + ": invalid UTF-8");
        }
    }
}

std::optional<Category> category_field(std::string_view value, std::size_t row) {
    if (value.empty()) return std::nullopt;
    auto c = parse_category(value);
    if (!c) {
        throw ParseError("malformed record at row " + std::to_string(row) + ": unknown category '" +
                         std::string(value) + "'");
    }
    return c;
}

std::vector<IssueReport> parse_csv(std::string_view text) {
    const auto records = csv::parse(text);
    if (records.empty()) throw ValidationError("missing required column 'id' (file has no header)");
    const csv::Header header(records.front());
    const auto id_col = header.require("id");
    const auto body_col = header.require("body");
    const int title_col = header.index("title");
    const int label_col = header.index("label");
    const int assoc_col = header.index("author_association");
    const auto width = records.front().fields.size();

    std::vector<IssueReport> out;
    out.reserve(records.size() - 1);
    for (std::size_t i = 1; i < records.size(); ++i) {
        const auto& rec = records[i];
        if (rec.fields.size() != width) {
            throw ParseError("malformed record at row " + std::to_string(rec.row) + ": expected " +
                             std::to_string(width) + " fields, got " + std::to_string(rec.fields.size()));
        }
        IssueReport r;
        r.id = rec.fields[id_col];
        r.body = rec.fields[body_col];
        if (title_col >= 0) r.title = rec.fields[static_cast<std::size_t>(title_col)];
        if (label_col >= 0) r.category = category_field(rec.fields[static_cast<std::size_t>(label_col)], rec.row);
        if (assoc_col >= 0 && !rec.fields[static_cast<std::size_t>(assoc_col)].empty()) {
            r.author_association = rec.fields[static_cast<std::size_t>(assoc_col)];
        }
        validate_report(r, rec.row);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<IssueReport> parse_jsonl(std::string_view text) {
    std::vector<IssueReport> out;
    std::size_t row = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        auto line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++row;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;

        json j;
        try {
            j = json::parse(line);
        } catch (const json::parse_error& e) {
            throw ParseError("malformed record at row " + std::to_string(row) + ": " + e.what());
        }
        if (!j.is_object()) throw ParseError("malformed record at row " + std::to_string(row) + ": not an object");
        auto str = [&](const char* key, bool required) -> std::optional<std::string> {
            auto it = j.find(key);
            if (it == j.end() || it->is_null()) {
                if (required) throw ValidationError("missing required column '" + std::string(key) + "' at row " + std::to_string(row));
                return std::nullopt;
            }
            if (it->is_number_integer()) return std::to_string(it->get<long long>());
            if (!it->is_string()) {
                throw ParseError("malformed record at row " + std::to_string(row) + ": field '" + key + "' is not a string");
            }
            return it->get<std::string>();
        };
        IssueReport r;
        r.id = *str("id", true);
        r.body = *str("body", true);
        r.title = str("title", false).value_or("");
        if (auto c = str("category", false)) {
            r.category = category_field(*c, row);
        } else if (auto l = str("label", false)) {
            r.category = category_field(*l, row);
        }
        r.author_association = str("author_association", false);
        validate_report(r, row);
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace

std::string_view to_string(Category c) {
    switch (c) {
    case Category::bug: return "bug";
    case Category::feature: return "feature";
    case Category::question: return "question";
    case Category::documentation: return "documentation";
    }
    return "bug";
}

std::optional<Category> parse_category(std::string_view s) {
    for (auto c : {Category::bug, Category::feature, Category::question, Category::documentation}) {
        if (to_string(c) == s) return c;
    }
    return std::nullopt;
}

ReportFormat format_from_path(const std::filesystem::path& path) {
    const auto ext = path.extension().string();
    if (ext == ".csv") return ReportFormat::csv;
    if (ext == ".jsonl" || ext == ".json" || ext == ".ndjson") return ReportFormat::jsonl;
    throw ValidationError("cannot infer report format from '" + path.string() + "' (use .csv or .jsonl)");
}

std::vector<IssueReport> parse_reports(std::string_view text, ReportFormat format) {
    return format == ReportFormat::csv ? parse_csv(text) : parse_jsonl(text);
}

std::string format_reports(const std::vector<IssueReport>& reports, ReportFormat format) {
    std::string out;
    if (format == ReportFormat::csv) {
        out = csv::format_row(kReportColumns);
        for (const auto& r : reports) {
            out += csv::format_row({r.category ? std::string(to_string(*r.category)) : std::string(), r.id, r.title,
                                    r.body, r.author_association.value_or("")});
        }
        return out;
    }
    for (const auto& r : reports) {
        json j = {{"id", r.id}, {"title", r.title}, {"body", r.body}};
        if (r.category) j["category"] = to_string(*r.category);
        if (r.author_association) j["author_association"] = *r.author_association;
        out += j.dump();
        out.push_back('\n');
    }
    return out;
}

std::vector<IssueReport> load_reports(const std::filesystem::path& path, ReportFormat format) {
    return parse_reports(read_file(path), format);
}

void write_reports(const std::vector<IssueReport>& reports, const std::filesystem::path& path,
                   ReportFormat format) {
    write_file(path, format_reports(reports, format));
}

std::vector<LabeledCandidate> load_labeled_candidates(const std::filesystem::path& path) {
    const auto text = read_file(path);
    std::vector<LabeledCandidate> out;
    std::istringstream in(text);
    std::string line;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        ++row;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const auto j = json::parse(line);
            LabeledCandidate c;
            c.report_id = j.at("report_id").get<std::string>();
            c.candidate_text = j.at("candidate_text").get<std::string>();
            c.span = {j.at("start").get<std::size_t>(), j.at("end").get<std::size_t>()};
            c.pattern_name = j.at("pattern_name").get<std::string>();
            c.label = j.at("label").get<bool>();
            if (c.span.start >= c.span.end || unicode::length(c.candidate_text) != c.span.length()) {
                throw ValidationError("span does not match candidate_text");
            }
            out.push_back(std::move(c));
        } catch (const json::exception& e) {
            throw ParseError("malformed record at row " + std::to_string(row) + ": " + e.what());
        } catch (const ValidationError& e) {
            throw ParseError("malformed record at row " + std::to_string(row) + ": " + e.what());
        }
    }
    return out;
}

void write_labeled_candidates(const std::vector<LabeledCandidate>& items, const std::filesystem::path& path) {
    std::string out;
    for (const auto& c : items) {
        out += json{{"report_id", c.report_id},   {"candidate_text", c.candidate_text},
                    {"start", c.span.start},      {"end", c.span.end},
                    {"pattern_name", c.pattern_name}, {"label", c.label}}
                   .dump();
        out.push_back('\n');
    }
    write_file(path, out);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read '" + path.string() + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error reading '" + path.string() + "'");
    return ss.str();
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("error writing '" + path.string() + "'");
}

}  // namespace secretscan
