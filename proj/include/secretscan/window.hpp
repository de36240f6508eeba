#pragma once

#include <cstddef>
#include <string>
#include <string_view>

#include "secretscan/ingest.hpp"

namespace secretscan {

inline constexpr std::size_t kDefaultWindowRadius = 125;
// Radius used for the real-world repository scans.
inline constexpr std::size_t kDeploymentWindowRadius = 200;

struct ContextWindow {
    std::string text;
    std::size_t radius = 0;
    Span candidate_offset;  // relative to `text`
    Span source_span;       // window extent within the cleaned body

    std::string candidate() const;
    std::string left_context() const;

    friend bool operator==(const ContextWindow&, const ContextWindow&) = default;
};

// Window = candidate plus up to `radius` code points on each side, clipped to
// the body. Throws ValidationError when the span is empty or out of bounds.
ContextWindow extract_window(std::string_view cleaned_body, Span span, std::size_t radius);

}  // namespace secretscan
