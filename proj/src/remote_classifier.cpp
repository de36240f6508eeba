#include <cmath>

#include <json.hpp>

#include "http_util.hpp"
#include "secretscan/classify.hpp"
#include "secretscan/error.hpp"

namespace secretscan {

Verdict predict_remote(std::string_view endpoint, const ContextWindow& w, std::chrono::milliseconds timeout,
                       double threshold, CandidateSecret candidate) {
    const auto url = detail::split_url(endpoint);
    auto client = detail::make_client(url.origin, timeout);
    const nlohmann::json request = {{"window_text", w.text},
                                    {"candidate_offset", {w.candidate_offset.start, w.candidate_offset.end}}};

    const auto res = client->Post(url.path, request.dump(), "application/json");
    if (!res) {
        throw RemoteError("remote classifier at " + std::string(endpoint) +
                          " unreachable: " + httplib::to_string(res.error()));
    }
    if (res->status < 200 || res->status >= 300) {
        throw RemoteError("remote classifier returned HTTP " + std::to_string(res->status));
    }
    double score = 0.0;
    try {
        const auto j = nlohmann::json::parse(res->body);
        const auto it = j.find("score");
        if (it == j.end() || !it->is_number()) throw RemoteError("remote classifier reply lacks a numeric 'score'");
        score = it->get<double>();
    } catch (const nlohmann::json::exception& e) {
        throw RemoteError(std::string("remote classifier reply is not JSON: ") + e.what());
    }
    if (!std::isfinite(score) || score < 0.0 || score > 1.0) {
        throw RemoteError("remote classifier score " + std::to_string(score) + " outside [0, 1]");
    }
    return {std::move(candidate), score, score >= threshold};
}

}  // namespace secretscan
