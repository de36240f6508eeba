#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// Minimal RFC-4180 reader/writer shared by the report and label-file formats.
namespace secretscan::csv {

struct Record {
    std::size_t row = 0;  // 1-based record number; the header is row 1
    std::vector<std::string> fields;
};

// Throws ParseError on an unterminated quoted field or stray quote.
std::vector<Record> parse(std::string_view text);

std::string escape_field(std::string_view field);
std::string format_row(const std::vector<std::string>& fields);

// Resolves header names to column indices; -1 when the column is absent.
class Header {
public:
    explicit Header(const Record& header);

    int index(std::string_view name) const;
    // Throws ValidationError naming the missing column.
    std::size_t require(std::string_view name) const;

private:
    std::vector<std::string> names_;
};

}  // namespace secretscan::csv
