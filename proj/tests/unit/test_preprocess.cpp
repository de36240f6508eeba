#include <gtest/gtest.h>

#include <filesystem>
#include <map>
#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "secretscan/error.hpp"
#include "secretscan/preprocess.hpp"
#include "secretscan/unicode.hpp"

using namespace secretscan;

TEST(Preprocess, BuiltinRulesCompileInOrder) {
    const auto rules = builtin_rules();
    ASSERT_EQ(rules.size(), 21u);
    EXPECT_EQ(rules.rules().front().name, "quotation_marks");
    EXPECT_EQ(rules.rules().back().name, "screenshot");
    for (std::size_t i = 1; i < rules.size(); ++i) EXPECT_LT(rules.rules()[i - 1].order, rules.rules()[i].order);
    // URL rules run before the dotted-package rule.
    auto pos = [&](std::string_view n) { return rules.find(n)->order; };
    EXPECT_LT(pos("url"), pos("packages"));
    EXPECT_LT(pos("url_fragment"), pos("packages"));
}

TEST(Preprocess, EachRuleHasPositiveAndNegativeFixtures) {
    std::map<std::string, std::pair<int, int>> counts;
    for (const auto& c : fixtures::cleaning_cases()) (c.positive ? counts[c.rule].first : counts[c.rule].second)++;
    const auto rules = builtin_rules();
    for (const auto& r : rules.rules()) {
        EXPECT_GE(counts[r.name].first, 2) << r.name;
        EXPECT_GE(counts[r.name].second, 1) << r.name;
    }
}

TEST(Preprocess, PositiveFixturesRemoveNoiseRuleByRule) {
    for (const auto& c : fixtures::cleaning_cases()) {
        if (!c.positive) continue;
        const auto result = clean(c.input, fixtures::single_rule(c.rule));
        EXPECT_EQ(result.cleaned, c.expected) << c.rule << ": " << c.input;
        EXPECT_FALSE(result.removals.empty()) << c.rule;
    }
}

TEST(Preprocess, NegativeFixturesSurviveFullRuleSet) {
    const auto rules = builtin_rules();
    for (const auto& c : fixtures::cleaning_cases()) {
        if (c.positive) continue;
        const auto result = clean(c.input, rules);
        EXPECT_EQ(result.cleaned, c.input) << c.rule;
        EXPECT_TRUE(result.removals.empty()) << c.rule;
    }
}

TEST(Preprocess, IdempotentOnFixtureCorpus) {
    const auto rules = builtin_rules();
    for (const auto& c : fixtures::cleaning_cases()) {
        const auto once = clean(c.input, rules).cleaned;
        EXPECT_EQ(clean(once, rules).cleaned, once) << c.input;
    }
}

TEST(Preprocess, EmptyBodyAndEmptyRuleSet) {
    EXPECT_EQ(clean("", builtin_rules()).cleaned, "");
    const auto none = compile_rules({});
    EXPECT_EQ(clean("keep \"all\" of this", none).cleaned, "keep \"all\" of this");
}

TEST(Preprocess, RulesApplyInRankOrderNotListOrder) {
    // Rank 1 deletes "ab"; rank 2 would delete "abc" if it ran first.
    const auto rules = compile_rules({{"second", "abc", 2}, {"first", "ab", 1}});
    EXPECT_EQ(rules.rules()[0].name, "first");
    EXPECT_EQ(clean("xabcx", rules).cleaned, "xcx");
}

TEST(Preprocess, RemovalSpansAreCodePoints) {
    const auto rules = compile_rules({{"q", "\"", 1}});
    const auto r = clean("\xC3\xA9\xC3\xA9\"x\"", rules);
    EXPECT_EQ(r.cleaned, "\xC3\xA9\xC3\xA9x");
    ASSERT_EQ(r.removals.size(), 2u);
    EXPECT_EQ(r.removals[0].span, (Span{2, 3}));
    EXPECT_EQ(r.removals[1].span, (Span{4, 5}));
    EXPECT_EQ(r.removals[0].rule_name, "q");
}

TEST(Preprocess, RejectsBadRuleSets) {
    EXPECT_THROW(compile_rules({{"a", "x", 1}, {"a", "y", 2}}), ValidationError);
    EXPECT_THROW(compile_rules({{"a", "x", 1}, {"b", "y", 1}}), ValidationError);
    try {
        compile_rules({{"broken", "(unclosed", 1}});
        FAIL();
    } catch (const ValidationError& e) {
        EXPECT_NE(std::string(e.what()).find("broken"), std::string::npos);
    }
}

TEST(Preprocess, LoadsRuleFile) {
    const auto path = std::filesystem::temp_directory_path() / "secretscan_rules.jsonl";
    write_file(path, "{\"name\":\"digits\",\"pattern\":\"\\\\d+\",\"order\":1}\n\n");
    const auto rules = load_rules(path);
    EXPECT_EQ(clean("a1b22c", rules).cleaned, "abc");
    write_file(path, "{\"name\":\"x\"}\n");
    EXPECT_THROW(load_rules(path), ParseError);
    std::filesystem::remove(path);
}

TEST(Preprocess, OutputNeverGrowsAndStaysValidUtf8) {
    std::mt19937_64 rng(99);
    const auto rules = builtin_rules();
    for (int i = 0; i < 300; ++i) {
        auto body = oracle::random_text(rng, rng() % 120);
        if (i % 3 == 0) body += " at org.x.Y.z(Y.java:1) /tmp/a \"q\" <b>";
        const auto out = clean(body, rules).cleaned;
        EXPECT_LE(out.size(), body.size());
        EXPECT_TRUE(unicode::is_valid_utf8(out));
    }
}
