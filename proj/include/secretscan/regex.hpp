#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

namespace secretscan {

// Immutable compiled regular expression with Perl/Python-compatible syntax.
// `.` does not match newlines and `^`/`$` anchor at the whole text, matching
// the defaults of the Python `re` module the rule tables were written for.
// Copies share the compiled program and are safe to use across threads.
class Regex {
public:
    // Throws ValidationError with the engine's diagnostic.
    explicit Regex(std::string source);

    const std::string& source() const { return source_; }
    std::size_t group_count() const;

    struct Match {
        std::size_t begin = 0;  // byte offsets
        std::size_t end = 0;
        bool matched = false;
    };

    // Visits every non-overlapping match left to right (same traversal as
    // Python's re.finditer). `group` selects the reported submatch; the visitor
    // returns false to stop.
    void for_each_match(std::string_view text, std::size_t group,
                        const std::function<bool(const Match& whole, const Match& selected)>& visit) const;

private:
    struct Impl;
    std::string source_;
    std::shared_ptr<const Impl> impl_;
};

}  // namespace secretscan
