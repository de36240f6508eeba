#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "secretscan/error.hpp"
#include "secretscan/window.hpp"

using namespace secretscan;

TEST(Window, ClipsAtBodyEdges) {
    const std::string body = "0123456789";
    const auto w = extract_window(body, {4, 6}, 3);
    EXPECT_EQ(w.text, "12345678");
    EXPECT_EQ(w.candidate(), "45");
    EXPECT_EQ(w.candidate_offset, (Span{3, 5}));
    EXPECT_EQ(w.source_span, (Span{1, 9}));
    EXPECT_EQ(w.left_context(), "123");

    const auto left = extract_window(body, {0, 2}, 125);
    EXPECT_EQ(left.text, body);
    EXPECT_EQ(left.candidate_offset, (Span{0, 2}));
}

TEST(Window, RadiusZeroIsCandidateOnly) {
    const auto w = extract_window("abc secret xyz", {4, 10}, 0);
    EXPECT_EQ(w.text, "secret");
}

TEST(Window, DefaultRadiusBoundsWindowLength) {
    const std::string body(1000, 'a');
    const auto w = extract_window(body, {500, 510}, kDefaultWindowRadius);
    EXPECT_EQ(w.text.size(), 10u + 2 * kDefaultWindowRadius);
    EXPECT_EQ(kDeploymentWindowRadius, 200u);
}

TEST(Window, CountsCodePointsNotBytes) {
    const std::string body = "\xC3\xA9\xC3\xA9KEY\xC3\xA9\xC3\xA9";
    const auto w = extract_window(body, {2, 5}, 1);
    EXPECT_EQ(w.text, "\xC3\xA9KEY\xC3\xA9");
    EXPECT_EQ(w.candidate(), "KEY");
}

TEST(Window, RejectsInvalidSpans) {
    EXPECT_THROW(extract_window("abc", {2, 2}, 5), ValidationError);
    EXPECT_THROW(extract_window("abc", {2, 1}, 5), ValidationError);
    EXPECT_THROW(extract_window("abc", {1, 4}, 5), ValidationError);
}

TEST(Window, MatchesNaiveSliceProperty) {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 500; ++i) {
        const auto body = oracle::random_text(rng, 1 + rng() % 300);
        const auto len = oracle::cp_count(body);
        const std::size_t start = rng() % len;
        const std::size_t end = start + 1 + rng() % (len - start);
        const std::size_t radius = rng() % 160;
        const auto w = extract_window(body, {start, end}, radius);
        EXPECT_EQ(oracle::check_window(body, {start, end}, radius, w), "");
    }
}

TEST(Window, GrowsMonotonicallyWithRadius) {
    std::mt19937_64 rng(78);
    for (int i = 0; i < 200; ++i) {
        const auto body = oracle::random_text(rng, 1 + rng() % 200);
        const auto len = oracle::cp_count(body);
        const std::size_t start = rng() % len;
        const std::size_t end = start + 1 + rng() % (len - start);
        const std::size_t r1 = rng() % 100, r2 = r1 + rng() % 100;
        const auto small = extract_window(body, {start, end}, r1);
        const auto large = extract_window(body, {start, end}, r2);
        EXPECT_LE(large.source_span.start, small.source_span.start);
        EXPECT_GE(large.source_span.end, small.source_span.end);
        EXPECT_NE(large.text.find(small.text), std::string::npos);
    }
}
