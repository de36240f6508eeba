#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "secretscan/pipeline.hpp"

namespace secretscan {

inline constexpr std::size_t kDefaultMaxBodyBytes = 256 * 1024;

struct DetectRequest {
    std::string text;
};

struct DetectCandidate {
    std::size_t start = 0;  // code points into the cleaned text
    std::size_t end = 0;
    std::string matched;
    std::string pattern;
    double score = 0.0;
};

struct DetectResponse {
    bool breach = false;
    std::vector<DetectCandidate> candidates;
    std::size_t cleaned_text_length = 0;
};

DetectResponse handle_detect(const DetectRequest& request, const Pipeline& pipeline);
std::string to_json(const DetectResponse& r);

struct HttpReply {
    int status = 200;
    std::string body;  // JSON
};

// Transport-independent handlers behind POST /detect and GET /health.
HttpReply handle_detect_http(std::string_view body, const Pipeline& pipeline,
                             std::size_t max_body = kDefaultMaxBodyBytes);
HttpReply handle_health(const Pipeline& pipeline);

struct ServiceConfig {
    std::string host = "127.0.0.1";
    int port = 8080;
    std::size_t max_body = kDefaultMaxBodyBytes;
    // Only this origin receives CORS headers.
    std::string cors_origin = "https://github.com";
};

// HTTP front end. The pipeline is shared read-only by all worker threads.
class Service {
public:
    Service(std::shared_ptr<const Pipeline> pipeline, ServiceConfig config);
    ~Service();
    Service(const Service&) = delete;
    Service& operator=(const Service&) = delete;

    // Binds config.host:config.port (port 0 picks a free one); returns the
    // bound port or throws Error.
    int bind();
    // Serves until stop(); call after bind().
    void serve();
    void stop();
    // Blocks until the server is accepting connections.
    void wait_until_ready() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace secretscan
