#include "secretscan/service.hpp"

#include <httplib.h>
#include <json.hpp>

#include "secretscan/error.hpp"
#include "secretscan/unicode.hpp"

namespace secretscan {

using nlohmann::json;

namespace {

std::string error_body(std::string_view message) { return json{{"error", message}}.dump(); }

}  // namespace

DetectResponse handle_detect(const DetectRequest& request, const Pipeline& pipeline) {
    const auto outcome = pipeline.run(request.text);
    DetectResponse r;
    r.breach = outcome.breach;
    r.cleaned_text_length = unicode::length(outcome.cleaned);
    for (const auto& v : outcome.verdicts) {
        r.candidates.push_back({v.candidate.span.start, v.candidate.span.end, v.candidate.text, v.candidate.pattern_name,
                                v.score});
    }
    return r;
}

std::string to_json(const DetectResponse& r) {
    json candidates = json::array();
    for (const auto& c : r.candidates) {
        candidates.push_back(
            {{"start", c.start}, {"end", c.end}, {"matched", c.matched}, {"pattern", c.pattern}, {"score", c.score}});
    }
    return json{{"breach", r.breach}, {"candidates", candidates}, {"cleaned_text_length", r.cleaned_text_length}}.dump();
}

HttpReply handle_detect_http(std::string_view body, const Pipeline& pipeline, std::size_t max_body) {
    if (body.size() > max_body) {
        return {413, error_body("request body exceeds " + std::to_string(max_body) + " bytes")};
    }
    DetectRequest request;
    try {
        const auto j = json::parse(body);
        const auto it = j.is_object() ? j.find("text") : j.end();
        if (it == j.end()) return {400, error_body("request must be a JSON object with a 'text' field")};
        if (!it->is_string()) return {400, error_body("'text' must be a string")};
        request.text = it->get<std::string>();
    } catch (const json::parse_error& e) {
        return {400, error_body(std::string("invalid JSON: ") + e.what())};
    }
    try {
        return {200, to_json(handle_detect(request, pipeline))};
    } catch (const std::exception& e) {
        return {500, error_body(std::string("pipeline failure: ") + e.what())};
    }
}

HttpReply handle_health(const Pipeline& pipeline) {
    return {200, json{{"status", "ok"}, {"model_schema_version", pipeline.model().schema_version}}.dump()};
}

struct Service::Impl {
    std::shared_ptr<const Pipeline> pipeline;
    ServiceConfig config;
    httplib::Server server;
};

Service::Service(std::shared_ptr<const Pipeline> pipeline, ServiceConfig config) : impl_(std::make_unique<Impl>()) {
    impl_->pipeline = std::move(pipeline);
    impl_->config = std::move(config);
    auto& srv = impl_->server;
    const auto* impl = impl_.get();

    srv.set_payload_max_length(impl->config.max_body);
    srv.set_post_routing_handler([impl](const httplib::Request& req, httplib::Response& res) {
        const auto origin = req.get_header_value("Origin");
        if (!origin.empty() && origin == impl->config.cors_origin) {
            res.set_header("Access-Control-Allow-Origin", origin);
            res.set_header("Vary", "Origin");
        }
    });
    srv.Options("/detect", [impl](const httplib::Request& req, httplib::Response& res) {
        if (req.get_header_value("Origin") == impl->config.cors_origin) {
            res.set_header("Access-Control-Allow-Methods", "POST, OPTIONS");
            res.set_header("Access-Control-Allow-Headers", "Content-Type");
        }
        res.status = 204;
    });
    srv.Post("/detect", [impl](const httplib::Request& req, httplib::Response& res) {
        const auto reply = handle_detect_http(req.body, *impl->pipeline, impl->config.max_body);
        res.status = reply.status;
        res.set_content(reply.body, "application/json");
    });
    srv.Get("/health", [impl](const httplib::Request&, httplib::Response& res) {
        const auto reply = handle_health(*impl->pipeline);
        res.status = reply.status;
        res.set_content(reply.body, "application/json");
    });
    srv.set_error_handler([](const httplib::Request&, httplib::Response& res) {
        if (res.body.empty()) {
            res.set_content(error_body("HTTP " + std::to_string(res.status)), "application/json");
        }
    });
}

Service::~Service() { stop(); }

int Service::bind() {
    auto& cfg = impl_->config;
    int port = cfg.port;
    if (port == 0) {
        port = impl_->server.bind_to_any_port(cfg.host);
    } else if (!impl_->server.bind_to_port(cfg.host, port)) {
        port = -1;
    }
    if (port < 0) throw Error("cannot bind " + cfg.host + ":" + std::to_string(cfg.port));
    cfg.port = port;
    return port;
}

void Service::serve() { impl_->server.listen_after_bind(); }

void Service::stop() {
    if (impl_ && impl_->server.is_running()) impl_->server.stop();
}

void Service::wait_until_ready() const { impl_->server.wait_until_ready(); }

}  // namespace secretscan
