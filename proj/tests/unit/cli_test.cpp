// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#include "test_support.hpp"

#include "cli.hpp"
#include "hymap/dsl.hpp"
#include "hymap/hypotheses.hpp"
#include "hymap/registry.hpp"

#include <gtest/gtest.h>

#include <map>
#include <sstream>

namespace hymap::cli {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result hymap(std::vector<std::string> args, const std::string& input = {},
             std::map<std::string, std::string> env = {}, bool tty = false) {
    std::istringstream in(input);
    std::ostringstream out, err;
    Io io{in, out, err, [env](const char* name) -> const char* {
              auto it = env.find(name);
              return it == env.end() ? nullptr : it->second.c_str();
          },
          tty};
    args.insert(args.begin(), "hymap");
    const int code = run(args, io);
    return {code, out.str(), err.str()};
}

std::string corpus(const char* name) { return testing::corpus_path(name).string(); }

// Copies a fixture into a temp dir so assessment files land there.
fs::path staged(const testing::TempDir& dir, const char* name) {
    const auto to = dir / name;
    fs::copy_file(testing::corpus_path(name), to);
    return to;
}

TEST(Cli, HypothesesCaseD) {
    const auto r = hymap({"hypotheses", corpus("case_d.hymap"), "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    ASSERT_EQ(j.size(), 4u);
    for (const auto& h : j) EXPECT_EQ(h["kind"], "value");
}

TEST(Cli, HypothesesMarkdownDefault) {
    const auto r = hymap({"hypotheses", corpus("case_c.hymap")});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("| id | kind | statement | status | risk |"), std::string::npos);
    EXPECT_NE(r.out.find("gamification increases making the development work more fun"), std::string::npos);
}

TEST(Cli, FormatFromEnvironment) {
    const auto r = hymap({"hypotheses", corpus("case_d.hymap")}, {}, {{"HYMAP_FORMAT", "json"}});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(json::accept(r.out));
}

TEST(Cli, CheckCyclicExitsOneWithPath) {
    const auto r = hymap({"check", corpus("cyclic.hymap")});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE((r.out + r.err).find("\"c\" -> \"a\" -> \"b\" -> \"c\""), std::string::npos) << r.out << r.err;
}

TEST(Cli, CheckCleanAndSyntaxError) {
    EXPECT_EQ(hymap({"check", corpus("case_e.hymap")}).code, 0);
    testing::TempDir dir;
    testing::write_file(dir / "bad.hymap", "product \"a\nconcept \"b\"\n");
    const auto r = hymap({"check", (dir / "bad.hymap").string()});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("bad.hymap:1:9"), std::string::npos) << r.err;
    testing::write_file(dir / "undeclared.hymap", "product \"a\"\noffers \"x\"\n");
    EXPECT_EQ(hymap({"check", (dir / "undeclared.hymap").string()}).code, 1);
}

TEST(Cli, CheckReportsWarnings) {
    const auto r = hymap({"check", corpus("case_c.hymap")});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("OrphanFeature"), std::string::npos);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(hymap({}).code, 3);
    EXPECT_EQ(hymap({"frobnicate"}).code, 3);
    EXPECT_EQ(hymap({"hypotheses"}).code, 3);
    EXPECT_EQ(hymap({"hypotheses", corpus("case_d.hymap"), "--format", "xml"}).code, 3);
    EXPECT_EQ(hymap({"assess", corpus("case_d.hymap"), "hyp-influence-1", "--status", "maybe"}).code, 3);
}

TEST(Cli, MissingFileIsDomainError) {
    const auto r = hymap({"hypotheses", "/nonexistent/x.hymap"});
    EXPECT_EQ(r.code, 1);
    EXPECT_FALSE(r.err.empty());
}

TEST(Cli, SummaryCaseG) {
    const auto r = hymap({"summary", corpus("case_g.hymap"), "--format", "json"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto j = json::parse(r.out);
    EXPECT_EQ(j["totals"]["problem"], 2);
    EXPECT_EQ(j["totals"]["value"], 10);
    EXPECT_EQ(j["totals"]["product"], 4);
    const auto md = hymap({"summary", corpus("case_g.hymap")});
    EXPECT_NE(md.out.find("| Total |"), std::string::npos);
    const auto csv = hymap({"summary", corpus("case_g.hymap"), "--format", "csv"});
    EXPECT_EQ(csv.out.rfind("status,", 0), 0u);
}

TEST(Cli, AssessThenSummary) {
    testing::TempDir dir;
    const auto map = staged(dir, "case_d.hymap");
    auto r = hymap({"assess", map.string(), "hyp-influence-1", "--status", "validated", "--risk", "H", "--evidence",
                    "product-usage:weekly logs", "--recorded-at", "2026-02-01T00:00:00Z"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(fs::exists(dir / "case_d.assessments.json"));
    r = hymap({"assess", map.string(), "hyp-influence-2", "--status", "validated", "--risk", "H"});
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("ValidatedWithoutEvidence"), std::string::npos) << r.err;
    r = hymap({"assess", map.string(), "hyp-nope", "--status", "refuted"});
    EXPECT_EQ(r.code, 1);
    r = hymap({"summary", map.string(), "--format", "json"});
    EXPECT_EQ(json::parse(r.out)["rows"]["validated"]["value"]["H"], 1);
    r = hymap({"hypotheses", map.string(), "--format", "json", "--prioritized"});
    EXPECT_EQ(json::parse(r.out).back()["id"], "hyp-influence-1");
    // --assessments points elsewhere.
    const auto other = dir / "other.json";
    r = hymap({"--assessments", other.string(), "assess", map.string(), "hyp-influence-3", "--status", "refuted"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(fs::exists(other));
}

TEST(Cli, RenderDotAndSvg) {
    auto r = hymap({"render", corpus("case_e.hymap"), "--format", "dot"});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(testing::check_dot(testing::load_fixture("case_e.hymap"), r.out).empty());
    testing::TempDir dir;
    r = hymap({"render", corpus("case_e.hymap"), "--format", "svg", "-o", (dir / "e.svg").string()});
    ASSERT_EQ(r.code, 0);
    EXPECT_NE(testing::read_file(dir / "e.svg").find("<svg"), std::string::npos);
    r = hymap({"render", corpus("case_d.hymap"), "--format", "layout", "--orientation", "product-bottom"});
    EXPECT_EQ(json::parse(r.out)["orientation"], "product-bottom");
    EXPECT_EQ(hymap({"render", corpus("case_d.hymap"), "--format", "png"}).code, 3);
}

TEST(Cli, ExportRoundTrip) {
    testing::TempDir dir;
    auto r = hymap({"export", corpus("case_f.hymap"), "--format", "json", "-o", (dir / "f.json").string()});
    ASSERT_EQ(r.code, 0) << r.err;
    r = hymap({"export", (dir / "f.json").string(), "--format", "dsl"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, dsl::serialize(testing::load_fixture("case_f.hymap")));
    // JSON maps work everywhere a .hymap does.
    EXPECT_EQ(hymap({"hypotheses", (dir / "f.json").string(), "--format", "json"}).code, 0);
}

TEST(Cli, NewScaffold) {
    testing::TempDir dir;
    const auto file = (dir / "m.hymap").string();
    auto r = hymap({"--non-interactive", "new", file});
    EXPECT_EQ(r.code, 3);
    r = hymap({"new", file}, "HotelMatch\n");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("What is the product/solution name?"), std::string::npos);
    EXPECT_EQ(testing::read_file(file), "product \"HotelMatch\"\n");
    EXPECT_EQ(hymap({"new", file, "--product", "Other"}).code, 1);
    EXPECT_EQ(hymap({"new", file, "--product", "Other", "--force"}).code, 0);
}

TEST(Cli, ScriptReplayMatchesFixture) {
    testing::TempDir dir;
    const auto out = dir / "d.hymap";
    const auto r = hymap({"--non-interactive", "elicit", out.string(), "--script", corpus("case_d.log.jsonl")});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto replayed = testing::load_fixture_path(out);
    const auto fixture = testing::load_fixture("case_d.hymap");
    EXPECT_TRUE(structurally_equal(replayed, fixture));
    EXPECT_EQ(testing::statement_set(replayed), testing::statement_set(fixture));
    EXPECT_TRUE(fs::exists(dir / "d.log.jsonl"));
}

TEST(Cli, NonInteractiveElicitNeedsScript) {
    testing::TempDir dir;
    EXPECT_EQ(hymap({"--non-interactive", "elicit", (dir / "x.hymap").string()}).code, 3);
}

TEST(Cli, InteractiveSessionFromAnswers) {
    testing::TempDir dir;
    const auto out = dir / "d.hymap";
    const auto answers = testing::read_file(testing::corpus_path("case_d.answers.txt"));
    const auto r = hymap({"elicit", out.string()}, answers);
    ASSERT_EQ(r.code, 0) << r.err << r.out;
    EXPECT_TRUE(structurally_equal(testing::load_fixture_path(out), testing::load_fixture("case_d.hymap")));
    // The log written next to the map replays to the same map.
    const auto again = dir / "again.hymap";
    ASSERT_EQ(hymap({"--non-interactive", "elicit", again.string(), "--script", (dir / "d.log.jsonl").string()}).code, 0);
    EXPECT_EQ(testing::read_file(again), testing::read_file(out));
}

TEST(Cli, InterruptedSessionResumes) {
    testing::TempDir dir;
    const auto out = dir / "d.hymap";
    const auto answers = testing::read_file(testing::corpus_path("case_d.answers.txt"));
    // Feed the first half, then end of input.
    std::istringstream lines(answers);
    std::string line, first, rest;
    int n = 0;
    while (std::getline(lines, line)) (n++ < 6 ? first : rest) += line + "\n";
    auto r = hymap({"elicit", out.string()}, first);
    EXPECT_EQ(r.code, 1);
    EXPECT_TRUE(fs::exists(dir / "d.log.jsonl"));
    r = hymap({"elicit", out.string(), "--resume"}, rest);
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(structurally_equal(testing::load_fixture_path(out), testing::load_fixture("case_d.hymap")));
}

TEST(Cli, ColorOnlyOnTerminals) {
    const auto plain = hymap({"check", corpus("case_c.hymap")}, {}, {}, false);
    EXPECT_EQ(plain.out.find("\033["), std::string::npos);
    const auto tty = hymap({"check", corpus("case_c.hymap")}, {}, {}, true);
    EXPECT_NE(tty.out.find("\033["), std::string::npos);
    const auto no_color = hymap({"--no-color", "check", corpus("case_c.hymap")}, {}, {}, true);
    EXPECT_EQ(no_color.out.find("\033["), std::string::npos);
    const auto env = hymap({"check", corpus("case_c.hymap")}, {}, {{"NO_COLOR", "1"}}, true);
    EXPECT_EQ(env.out.find("\033["), std::string::npos);
}

}  // namespace
}  // namespace hymap::cli
