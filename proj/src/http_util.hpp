#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <string_view>

#include <httplib.h>

namespace secretscan::detail {

struct Url {
    std::string origin;  // scheme://host[:port]
    std::string path;    // includes query, "/" when absent
};

// Throws ValidationError for anything but http(s)://host[:port][/path].
Url split_url(std::string_view url);

std::unique_ptr<httplib::Client> make_client(const std::string& origin, std::chrono::milliseconds timeout);

}  // namespace secretscan::detail
