// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#include "test_support.hpp"

#include "hymap/analysis.hpp"
#include "hymap/error.hpp"
#include "hymap/render.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <set>

namespace hymap {
namespace {

using render::Format;
using render::Orientation;
using render::RenderOptions;

const char* kFixtures[] = {"case_c", "case_d", "case_e", "case_f", "case_g"};

TEST(Render, Shapes) {
    EXPECT_EQ(render::dot_shape(NodeKind::Customer), "circle");
    EXPECT_EQ(render::dot_shape(NodeKind::Product), "ellipse");
    EXPECT_EQ(render::dot_shape(NodeKind::Feature), "box");
    EXPECT_EQ(render::dot_shape(NodeKind::Concept), "box");
    EXPECT_EQ(render::edge_label(Sign::Positive), "+");
    EXPECT_EQ(render::edge_label(Sign::Negative), "-");
    EXPECT_EQ(render::edge_label(Sign::Neutral), "/o/");
}

TEST(Render, ProductOnlyGraph) {
    CognitiveMap m;
    m.add_node(NodeKind::Product, "lonely app");
    const auto dot = render::to_dot(m);
    EXPECT_NE(dot.find("n0 [label=\"lonely app\", shape=ellipse];"), std::string::npos);
    EXPECT_EQ(dot.find("->"), std::string::npos);
    EXPECT_TRUE(testing::check_dot(m, dot).empty());
}

TEST(Render, NeutralEdgeLabel) {
    const auto m = testing::load_fixture("case_d.hymap");
    const auto dot = render::to_dot(m);
    EXPECT_NE(dot.find("[label=\"/o/\"]"), std::string::npos);
}

TEST(Render, DotMatchesNotation) {
    for (const char* name : kFixtures) {
        const auto m = testing::load_fixture(std::string(name) + ".hymap");
        const auto problems = testing::check_dot(m, render::to_dot(m));
        EXPECT_TRUE(problems.empty()) << name << ": " << (problems.empty() ? "" : problems.front());
    }
}

TEST(Render, DotSnapshots) {
    const bool update = std::getenv("HYMAP_UPDATE_SNAPSHOTS") != nullptr;
    for (const char* name : kFixtures) {
        const auto dot = render::to_dot(testing::load_fixture(std::string(name) + ".hymap"));
        const auto path = testing::snapshot_dir() / (std::string(name) + ".dot");
        if (update) testing::write_file(path, dot);
        EXPECT_EQ(dot, testing::read_file(path)) << name;
    }
}

TEST(Render, CheckDotCatchesWrongShape) {
    const auto m = testing::load_fixture("case_e.hymap");
    auto dot = render::to_dot(m);
    const auto at = dot.find("shape=circle");
    ASSERT_NE(at, std::string::npos);
    dot.replace(at, 12, "shape=box");
    EXPECT_FALSE(testing::check_dot(m, dot).empty());
}

TEST(Render, BandsEqualAssignLayers) {
    for (const char* name : kFixtures) {
        const auto m = testing::load_fixture(std::string(name) + ".hymap");
        const auto layout = render::compute_layout(m);
        const auto layers = assign_layers(m);
        for (const auto& p : layout.nodes) EXPECT_EQ(p.band, layers.layer(p.node->id)) << name;
        EXPECT_EQ(layout.nodes.size(), m.nodes().size());
    }
}

TEST(Render, CaseDHasFiveBands) {
    const auto m = testing::load_fixture("case_d.hymap");
    const auto layout = render::compute_layout(m);
    std::set<double> ys;
    for (const auto& p : layout.nodes) ys.insert(p.y);
    EXPECT_EQ(ys.size(), 4u);  // the feature band is empty in case D
    EXPECT_EQ(layout.layers.band_count(), 5);
    const auto svg = render::to_svg(m);
    EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
}

TEST(Render, ChainHasThreeBandsAndMonotoneEdges) {
    CognitiveMap m;
    const auto p = m.add_node(NodeKind::Product, "app");
    const auto f = m.add_node(NodeKind::Feature, "f");
    const auto c = m.add_node(NodeKind::Concept, "c");
    m.add_edge(p, f);
    m.add_edge(f, c, Sign::Positive);
    const auto layout = render::compute_layout(m);
    EXPECT_LT(layout.at(p).y, layout.at(f).y);
    EXPECT_LT(layout.at(f).y, layout.at(c).y);
    const auto flipped = render::compute_layout(m, Orientation::ProductBottom);
    EXPECT_GT(flipped.at(p).y, flipped.at(c).y);
}

TEST(Render, CaseDLayoutPinned) {
    const auto j = render::layout_json(testing::load_fixture("case_d.hymap"));
    EXPECT_EQ(j, nlohmann::json::parse(testing::read_file(testing::snapshot_dir() / "case_d.layout.json")));
}

TEST(Render, LayoutJsonShape) {
    const auto m = testing::load_fixture("case_e.hymap");
    const auto j = render::layout_json(m);
    EXPECT_EQ(j["version"], 1);
    EXPECT_EQ(j["orientation"], "product-top");
    EXPECT_EQ(j["nodes"].size(), m.nodes().size());
    EXPECT_EQ(j["edges"].size(), m.edges().size());
    EXPECT_EQ(j["bands"][0]["role"], "product");
    EXPECT_EQ(j["bands"].back()["role"], "customers");
    for (const auto& e : j["edges"]) {
        if (e["kind"] == "influence") EXPECT_TRUE(e["label"] == "+" || e["label"] == "-" || e["label"] == "/o/");
    }
}

TEST(Render, DeterministicAcrossEqualMaps) {
    const auto m = testing::load_fixture("case_f.hymap");
    std::mt19937_64 rng(3);
    const auto copy = testing::shuffled_copy(m, rng);
    EXPECT_EQ(render::to_dot(m), render::to_dot(copy));
    EXPECT_EQ(render::to_svg(m), render::to_svg(copy));
}

TEST(Render, CrossingReductionHelps) {
    // Two features each linked to the concept on the "wrong" side by label.
    CognitiveMap m;
    const auto p = m.add_node(NodeKind::Product, "app");
    const auto fa = m.add_node(NodeKind::Feature, "a");
    const auto fb = m.add_node(NodeKind::Feature, "b");
    const auto ca = m.add_node(NodeKind::Concept, "a2");
    const auto cb = m.add_node(NodeKind::Concept, "b2");
    m.add_edge(p, fa);
    m.add_edge(p, fb);
    m.add_edge(fa, cb, Sign::Positive);
    m.add_edge(fb, ca, Sign::Positive);
    EXPECT_EQ(render::count_adjacent_crossings(m, render::compute_layout(m)), 0u);
}

TEST(Render, InvalidMapRejected) {
    CognitiveMap m;
    m.add_node(NodeKind::Concept, "x");
    EXPECT_THROW(render::to_dot(m), Error);
}

TEST(Render, FormatDispatch) {
    const auto m = testing::load_fixture("case_d.hymap");
    EXPECT_EQ(render::parse_format("svg"), Format::Svg);
    EXPECT_EQ(render::parse_format("layout"), Format::LayoutJson);
    EXPECT_FALSE(render::parse_format("png"));
    RenderOptions o;
    o.format = Format::Dot;
    o.legend = false;
    EXPECT_EQ(render::render(m, o).find("label=\"customer"), std::string::npos);
    o.format = Format::LayoutJson;
    EXPECT_TRUE(nlohmann::json::accept(render::render(m, o)));
}

}  // namespace
}  // namespace hymap
