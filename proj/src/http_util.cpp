#include "http_util.hpp"

#include "secretscan/error.hpp"

namespace secretscan::detail {

Url split_url(std::string_view url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string_view::npos) throw ValidationError("invalid URL '" + std::string(url) + "'");
    const auto scheme = url.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") {
        throw ValidationError("unsupported URL scheme in '" + std::string(url) + "'");
    }
    const auto host_begin = scheme_end + 3;
    const auto path_begin = url.find('/', host_begin);
    Url out;
    out.origin = std::string(url.substr(0, path_begin));
    out.path = path_begin == std::string_view::npos ? "/" : std::string(url.substr(path_begin));
    if (out.origin.size() <= host_begin) throw ValidationError("URL has no host: '" + std::string(url) + "'");
    return out;
}

std::unique_ptr<httplib::Client> make_client(const std::string& origin, std::chrono::milliseconds timeout) {
    auto client = std::make_unique<httplib::Client>(origin);
    const auto secs = static_cast<time_t>(timeout.count() / 1000);
    const auto usecs = static_cast<time_t>((timeout.count() % 1000) * 1000);
    client->set_connection_timeout(secs, usecs);
    client->set_read_timeout(secs, usecs);
    client->set_write_timeout(secs, usecs);
    return client;
}

}  // namespace secretscan::detail
