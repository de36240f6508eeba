#include "secretscan/githubclient.hpp"

#include <cstdlib>
#include <thread>

#include <json.hpp>

#include "http_util.hpp"

namespace secretscan {

using nlohmann::json;

RepoRef RepoRef::parse(std::string_view s) {
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) throw ValidationError("repository must be given as owner/name");
    RepoRef r{std::string(s.substr(0, slash)), std::string(s.substr(slash + 1))};
    r.validate();
    return r;
}

void RepoRef::validate() const {
    for (const auto* part : {&owner, &name}) {
        if (part->empty() || part->find('/') != std::string::npos) {
            throw ValidationError("invalid repository reference '" + owner + "/" + name + "'");
        }
    }
}

RateLimitError::RateLimitError(std::int64_t reset_epoch, std::string cursor, std::vector<IssueReport> partial)
    : RemoteError("API rate limit exceeded; resets at epoch " + std::to_string(reset_epoch) + "; resume from " + cursor),
      reset_epoch_(reset_epoch),
      cursor_(std::move(cursor)),
      partial_(std::move(partial)) {}

std::optional<std::string> token_from_env() {
    const char* v = std::getenv(std::string(kApiTokenEnvVar).c_str());
    if (v == nullptr || *v == '\0') return std::nullopt;
    return std::string(v);
}

std::optional<std::string> next_link(std::string_view header) {
    std::size_t pos = 0;
    while (pos < header.size()) {
        auto end = header.find(',', pos);
        if (end == std::string_view::npos) end = header.size();
        const auto part = header.substr(pos, end - pos);
        pos = end + 1;
        const auto lt = part.find('<');
        const auto gt = part.find('>', lt);
        if (lt == std::string_view::npos || gt == std::string_view::npos) continue;
        const auto params = part.substr(gt + 1);
        if (params.find("rel=\"next\"") != std::string_view::npos || params.find("rel=next") != std::string_view::npos) {
            return std::string(part.substr(lt + 1, gt - lt - 1));
        }
    }
    return std::nullopt;
}

namespace {

std::optional<Category> category_from_labels(const json& issue) {
    const auto it = issue.find("labels");
    if (it == issue.end() || !it->is_array()) return std::nullopt;
    for (const auto& l : *it) {
        const auto name = l.is_object() ? l.value("name", std::string()) : (l.is_string() ? l.get<std::string>() : "");
        if (name == "enhancement") return Category::feature;
        if (auto c = parse_category(name)) return c;
    }
    return std::nullopt;
}

IssueReport to_report(const json& issue) {
    IssueReport r;
    const auto& number = issue.at("number");
    r.id = number.is_string() ? number.get<std::string>() : std::to_string(number.get<long long>());
    const auto title = issue.find("title");
    if (title != issue.end() && title->is_string()) r.title = title->get<std::string>();
    const auto body = issue.find("body");
    if (body != issue.end() && body->is_string()) r.body = body->get<std::string>();
    r.category = category_from_labels(issue);
    const auto assoc = issue.find("author_association");
    if (assoc != issue.end() && assoc->is_string() && !assoc->get<std::string>().empty()) {
        r.author_association = assoc->get<std::string>();
    }
    return r;
}

}  // namespace

std::vector<IssueReport> crawl_issues(const RepoRef& repo, const std::optional<std::string>& auth_token,
                                      std::size_t max_issues, const CrawlOptions& options) {
    repo.validate();
    if (max_issues == 0) throw ValidationError("max_issues must be positive");

    const auto sleep = options.sleep ? options.sleep : [](std::chrono::seconds s) { std::this_thread::sleep_for(s); };
    const auto now = options.now ? options.now : [] {
        return static_cast<std::int64_t>(
            std::chrono::duration_cast<std::chrono::seconds>(std::chrono::system_clock::now().time_since_epoch()).count());
    };

    std::string url = options.resume_cursor.value_or(options.api_base + "/repos/" + repo.owner + "/" + repo.name +
                                                     "/issues?state=all&sort=created&direction=desc&per_page=100");
    httplib::Headers headers = {{"Accept", "application/vnd.github+json"}, {"User-Agent", "secretscan-crawler"}};
    if (auth_token && !auth_token->empty()) headers.emplace("Authorization", "Bearer " + *auth_token);

    std::vector<IssueReport> out;
    while (out.size() < max_issues) {
        const auto target = detail::split_url(url);
        auto client = detail::make_client(target.origin, options.timeout);
        const auto res = client->Get(target.path, headers);
        if (!res) throw RemoteError("request to " + url + " failed: " + httplib::to_string(res.error()));

        if (res->status == 404) throw NotFoundError("repository " + repo.owner + "/" + repo.name + " not found");
        if ((res->status == 403 || res->status == 429) && res->get_header_value("X-RateLimit-Remaining") == "0") {
            const auto reset_header = res->get_header_value("X-RateLimit-Reset");
            std::int64_t reset = 0;
            try {
                reset = reset_header.empty() ? now() : std::stoll(reset_header);
            } catch (const std::exception&) {
                reset = now();
            }
            const auto wait = std::chrono::seconds(std::max<std::int64_t>(0, reset - now()) + 1);
            if (options.on_rate_limit == RateLimitPolicy::wait && wait <= options.max_wait) {
                sleep(wait);
                continue;
            }
            throw RateLimitError(reset, url, std::move(out));
        }
        if (res->status < 200 || res->status >= 300) {
            throw RemoteError("GET " + url + " returned HTTP " + std::to_string(res->status));
        }

        json page;
        try {
            page = json::parse(res->body);
        } catch (const json::parse_error& e) {
            throw RemoteError(std::string("malformed issues payload: ") + e.what());
        }
        if (!page.is_array()) throw RemoteError("malformed issues payload: expected a JSON array");
        try {
            for (const auto& issue : page) {
                if (out.size() >= max_issues) break;
                if (!issue.is_object()) throw RemoteError("malformed issues payload: entry is not an object");
                if (issue.contains("pull_request")) continue;
                out.push_back(to_report(issue));
            }
        } catch (const json::exception& e) {
            throw RemoteError(std::string("malformed issues payload: ") + e.what());
        }

        const auto next = next_link(res->get_header_value("Link"));
        if (!next || page.empty()) break;
        url = *next;
    }
    return out;
}

}  // namespace secretscan
