#include "secretscan/window.hpp"

#include <algorithm>

#include "secretscan/error.hpp"
#include "secretscan/unicode.hpp"

namespace secretscan {

std::string ContextWindow::candidate() const {
    return unicode::substr(text, candidate_offset.start, candidate_offset.end);
}

std::string ContextWindow::left_context() const { return unicode::substr(text, 0, candidate_offset.start); }

ContextWindow extract_window(std::string_view cleaned_body, Span span, std::size_t radius) {
    const unicode::OffsetIndex index(cleaned_body);
    const auto len = index.code_points();
    if (span.start >= span.end || span.end > len) {
        throw ValidationError("span [" + std::to_string(span.start) + ", " + std::to_string(span.end) +
                              ") out of bounds for body of length " + std::to_string(len));
    }
    const auto lo = span.start > radius ? span.start - radius : 0;
    const auto hi = std::min(len, span.end + std::min(radius, len));
    const auto b0 = index.to_byte(lo);

    ContextWindow w;
    w.text = std::string(cleaned_body.substr(b0, index.to_byte(hi) - b0));
    w.radius = radius;
    w.candidate_offset = {span.start - lo, span.end - lo};
    w.source_span = {lo, hi};
    return w;
}

}  // namespace secretscan
