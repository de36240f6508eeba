#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "secretscan/error.hpp"
#include "secretscan/ingest.hpp"

namespace secretscan {

inline constexpr std::string_view kApiTokenEnvVar = "SCANNER_API_TOKEN";
inline constexpr std::string_view kDefaultApiBase = "https://api.github.com";

struct RepoRef {
    std::string owner;
    std::string name;

    // Accepts "owner/name". Throws ValidationError otherwise.
    static RepoRef parse(std::string_view s);
    void validate() const;
};

enum class RateLimitPolicy { wait, abort };

struct CrawlOptions {
    std::string api_base = std::string(kDefaultApiBase);
    RateLimitPolicy on_rate_limit = RateLimitPolicy::abort;
    // Longest single wait accepted under RateLimitPolicy::wait; longer resets abort.
    std::chrono::seconds max_wait{900};
    std::chrono::milliseconds timeout{30000};
    // Page URL to continue from, as carried by RateLimitError::cursor().
    std::optional<std::string> resume_cursor;
    // Injected for tests; defaults to std::this_thread::sleep_for.
    std::function<void(std::chrono::seconds)> sleep;
    // Injected for tests; defaults to the system clock (epoch seconds).
    std::function<std::int64_t()> now;
};

class NotFoundError : public RemoteError {
public:
    using RemoteError::RemoteError;
};

// Raised when the API refuses with rate-limit headers and the policy (or the
// wait budget) says stop. Carries everything needed to resume.
class RateLimitError : public RemoteError {
public:
    RateLimitError(std::int64_t reset_epoch, std::string cursor, std::vector<IssueReport> partial);

    std::int64_t reset_epoch() const { return reset_epoch_; }
    const std::string& cursor() const { return cursor_; }
    const std::vector<IssueReport>& partial() const { return partial_; }

private:
    std::int64_t reset_epoch_;
    std::string cursor_;
    std::vector<IssueReport> partial_;
};

// Token from the SCANNER_API_TOKEN environment variable, if set and non-empty.
std::optional<std::string> token_from_env();

// Fetches issues in all states, newest first, 100 per page, following
// Link: rel="next" until max_issues reports are collected. Pull requests are
// skipped. Only GET requests are issued.
std::vector<IssueReport> crawl_issues(const RepoRef& repo, const std::optional<std::string>& auth_token,
                                      std::size_t max_issues, const CrawlOptions& options = {});

// Extracts the rel="next" target from a Link header, if any.
std::optional<std::string> next_link(std::string_view link_header);

}  // namespace secretscan
