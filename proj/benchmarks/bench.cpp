// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#include "hymap/dsl.hpp"
#include "hymap/error.hpp"
#include "hymap/hypotheses.hpp"
#include "hymap/json_io.hpp"
#include "hymap/model.hpp"
#include "hymap/render.hpp"

#include <benchmark/benchmark.h>

#include <random>
#include <string>

namespace {

using namespace hymap;

// Product, a few features and customers, and a layered concept DAG with
// roughly two outgoing influences per node.
CognitiveMap synthetic_map(std::size_t nodes) {
    std::mt19937 rng(7);
    CognitiveMap m;
    m.add_node(NodeKind::Product, "product");
    const auto product = m.nodes().front().id;
    std::vector<std::string> sources;
    std::vector<std::string> concepts;
    const std::size_t features = std::max<std::size_t>(1, nodes / 8);
    const std::size_t customers = std::max<std::size_t>(1, nodes / 10);
    for (std::size_t i = 0; i < features; ++i) {
        const auto f = m.add_node(NodeKind::Feature, "feature " + std::to_string(i));
        m.add_edge(product, f);
        sources.push_back(f);
    }
    for (std::size_t i = 1 + features; i + customers < nodes; ++i) {
        concepts.push_back(m.add_node(NodeKind::Concept, "concept " + std::to_string(i)));
    }
    // Edges only go to later concepts, so the graph stays acyclic.
    for (std::size_t i = 0; i < concepts.size(); ++i) {
        for (int k = 0; k < 2 && i + 1 < concepts.size(); ++k) {
            std::uniform_int_distribution<std::size_t> pick(i + 1, concepts.size() - 1);
            try {
                m.add_edge(concepts[i], concepts[pick(rng)], k == 0 ? Sign::Positive : Sign::Negative);
            } catch (const Error&) {
            }
        }
    }
    for (const auto& f : sources) {
        if (!concepts.empty()) m.add_edge(f, concepts[rng() % concepts.size()], Sign::Positive);
    }
    for (std::size_t i = 0; i < customers && !concepts.empty(); ++i) {
        const auto c = m.add_node(NodeKind::Customer, "customer " + std::to_string(i));
        m.add_edge(c, concepts[concepts.size() - 1 - (i % concepts.size())]);
    }
    return m;
}

void BM_Parse(benchmark::State& state) {
    const auto text = dsl::serialize(synthetic_map(state.range(0)));
    for (auto _ : state) benchmark::DoNotOptimize(dsl::parse(text));
    state.SetBytesProcessed(static_cast<int64_t>(state.iterations() * text.size()));
}
BENCHMARK(BM_Parse)->Arg(10)->Arg(50)->Arg(200);

void BM_Serialize(benchmark::State& state) {
    const auto map = synthetic_map(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(dsl::serialize(map));
}
BENCHMARK(BM_Serialize)->Arg(10)->Arg(50)->Arg(200);

void BM_JsonRoundTrip(benchmark::State& state) {
    const auto map = synthetic_map(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(map_from_json(map_to_json(map)));
}
BENCHMARK(BM_JsonRoundTrip)->Arg(50);

void BM_Generate(benchmark::State& state) {
    const auto map = synthetic_map(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(generate(map));
}
BENCHMARK(BM_Generate)->Arg(10)->Arg(50)->Arg(200);

void BM_Layout(benchmark::State& state) {
    const auto map = synthetic_map(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(render::compute_layout(map));
}
BENCHMARK(BM_Layout)->Arg(10)->Arg(50)->Arg(200);

void BM_Dot(benchmark::State& state) {
    const auto map = synthetic_map(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(render::to_dot(map));
}
BENCHMARK(BM_Dot)->Arg(50);

}  // namespace
BENCHMARK_MAIN();
