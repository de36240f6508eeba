#include "secretscan/csv.hpp"

#include "secretscan/error.hpp"

namespace secretscan::csv {

std::vector<Record> parse(std::string_view text) {
    if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

    std::vector<Record> records;
    Record current;
    std::string field;
    bool in_quotes = false;
    bool field_was_quoted = false;
    bool row_has_content = false;
    std::size_t row = 1;

    auto end_field = [&] {
        current.fields.push_back(std::move(field));
        field.clear();
        field_was_quoted = false;
    };
    auto end_record = [&] {
        end_field();
        current.row = row++;
        records.push_back(std::move(current));
        current = Record{};
        row_has_content = false;
    };

    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
            continue;
        }
        switch (c) {
        case '"':
            if (!field.empty() || field_was_quoted) {
                throw ParseError("malformed CSV: stray quote in row " + std::to_string(row));
            }
            in_quotes = true;
            field_was_quoted = true;
            row_has_content = true;
            break;
        case ',':
            end_field();
            row_has_content = true;
            break;
        case '\r':
            if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
            [[fallthrough]];
        case '\n':
            if (row_has_content) end_record();
            break;
        default:
            if (field_was_quoted) {
                throw ParseError("malformed CSV: text after closing quote in row " + std::to_string(row));
            }
            field.push_back(c);
            row_has_content = true;
        }
    }
    if (in_quotes) throw ParseError("malformed CSV: unterminated quoted field in row " + std::to_string(row));
    if (row_has_content) end_record();
    return records;
}

std::string escape_field(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string format_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out.push_back(',');
        out += escape_field(fields[i]);
    }
    out += "\r\n";
    return out;
}

Header::Header(const Record& header) : names_(header.fields) {}

int Header::index(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i) {
        if (names_[i] == name) return static_cast<int>(i);
    }
    return -1;
}

std::size_t Header::require(std::string_view name) const {
    const int i = index(name);
    if (i < 0) throw ValidationError("missing required column '" + std::string(name) + "'");
    return static_cast<std::size_t>(i);
}

}  // namespace secretscan::csv
