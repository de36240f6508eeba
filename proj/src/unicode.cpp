#include "secretscan/unicode.hpp"

#include "secretscan/error.hpp"

namespace secretscan::unicode {

namespace {

bool is_continuation(unsigned char c) { return (c & 0xC0U) == 0x80U; }

// Returns the sequence length at s[i], or 0 if the sequence is invalid.
std::size_t sequence_length(std::string_view s, std::size_t i, char32_t* out) {
    const auto c0 = static_cast<unsigned char>(s[i]);
    std::size_t n = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if (c0 < 0x80U) {
        if (out) *out = c0;
        return 1;
    } else if ((c0 & 0xE0U) == 0xC0U) {
        n = 2, cp = c0 & 0x1FU, min = 0x80;
    } else if ((c0 & 0xF0U) == 0xE0U) {
        n = 3, cp = c0 & 0x0FU, min = 0x800;
    } else if ((c0 & 0xF8U) == 0xF0U) {
        n = 4, cp = c0 & 0x07U, min = 0x10000;
    } else {
        return 0;
    }
    if (i + n > s.size()) return 0;
    for (std::size_t k = 1; k < n; ++k) {
        const auto c = static_cast<unsigned char>(s[i + k]);
        if (!is_continuation(c)) return 0;
        cp = (cp << 6) | (c & 0x3FU);
    }
    if (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) return 0;
    if (out) *out = cp;
    return n;
}

}  // namespace

bool is_valid_utf8(std::string_view s) {
    for (std::size_t i = 0; i < s.size();) {
        const auto n = sequence_length(s, i, nullptr);
        if (n == 0) return false;
        i += n;
    }
    return true;
}

std::u32string decode(std::string_view s) {
    std::u32string out;
    out.reserve(s.size());
    for (std::size_t i = 0; i < s.size();) {
        char32_t cp = 0;
        const auto n = sequence_length(s, i, &cp);
        if (n == 0) throw ParseError("invalid UTF-8 at byte " + std::to_string(i));
        out.push_back(cp);
        i += n;
    }
    return out;
}

std::string encode(std::u32string_view s) {
    std::string out;
    out.reserve(s.size());
    for (char32_t cp : s) {
        if (cp < 0x80) {
            out.push_back(static_cast<char>(cp));
        } else if (cp < 0x800) {
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else if (cp < 0x10000) {
            out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        }
    }
    return out;
}

std::size_t length(std::string_view s) {
    std::size_t n = 0;
    for (char c : s) {
        if (!is_continuation(static_cast<unsigned char>(c))) ++n;
    }
    return n;
}

OffsetIndex::OffsetIndex(std::string_view text) : cp_at_byte_(text.size() + 1) {
    std::size_t cp = 0;
    for (std::size_t b = 0; b < text.size(); ++b) {
        if (!is_continuation(static_cast<unsigned char>(text[b]))) {
            byte_at_cp_.push_back(b);
            cp_at_byte_[b] = cp++;
        } else {
            cp_at_byte_[b] = cp == 0 ? 0 : cp - 1;
        }
    }
    cp_at_byte_[text.size()] = cp;
    byte_at_cp_.push_back(text.size());
}

bool OffsetIndex::is_boundary(std::size_t byte_offset) const {
    return byte_at_cp_[cp_at_byte_[byte_offset]] == byte_offset;
}

std::string substr(std::string_view s, std::size_t start, std::size_t end) {
    const OffsetIndex index(s);
    if (start > end || end > index.code_points()) {
        throw ValidationError("code-point range [" + std::to_string(start) + ", " + std::to_string(end) +
                              ") out of bounds for text of length " + std::to_string(index.code_points()));
    }
    const auto b0 = index.to_byte(start);
    return std::string(s.substr(b0, index.to_byte(end) - b0));
}

}  // namespace secretscan::unicode
