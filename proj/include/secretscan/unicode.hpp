#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// All text in the toolkit is UTF-8 encoded std::string. Spans exposed to
// callers are code-point offsets, so these helpers translate between the two.
namespace secretscan::unicode {

bool is_valid_utf8(std::string_view s);

// Throws ParseError on invalid UTF-8.
std::u32string decode(std::string_view s);
std::string encode(std::u32string_view s);

std::size_t length(std::string_view s);

// Maps byte offsets of a UTF-8 string to code-point offsets. Offsets that land
// inside a multi-byte sequence map to the code point that contains them.
class OffsetIndex {
public:
    explicit OffsetIndex(std::string_view text);

    std::size_t to_code_point(std::size_t byte_offset) const { return cp_at_byte_[byte_offset]; }
    std::size_t to_byte(std::size_t cp_offset) const { return byte_at_cp_[cp_offset]; }
    std::size_t code_points() const { return byte_at_cp_.size() - 1; }
    bool is_boundary(std::size_t byte_offset) const;

private:
    std::vector<std::size_t> cp_at_byte_;
    std::vector<std::size_t> byte_at_cp_;
};

// Substring by code-point range [start, end).
std::string substr(std::string_view s, std::size_t start, std::size_t end);

}  // namespace secretscan::unicode
