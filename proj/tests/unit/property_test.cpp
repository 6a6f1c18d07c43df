// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#include "properties.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

namespace hymap::testing {
namespace {

std::uint64_t seed_from_env(std::uint64_t fallback) {
    if (const char* s = std::getenv("HYMAP_PROPERTY_SEED")) return std::strtoull(s, nullptr, 10);
    return fallback;
}

void expect_ok(const PropertyReport& r) {
    for (const auto& f : r.failures) ADD_FAILURE() << f;
    EXPECT_EQ(r.failure_count, 0u);
}

TEST(Properties, ThousandRandomMaps) {
    const auto seed = seed_from_env(20260115);
    const auto r = run_property_suite(seed, 1000, 0);
    RecordProperty("seed", std::to_string(seed));
    expect_ok(r);
    EXPECT_EQ(r.maps, 1000u);
    EXPECT_LE(r.max_nodes_seen, 50u);
    EXPECT_GT(r.illegal_pairs_rejected, 1000u);
    EXPECT_GT(r.cycles_injected, 500u);
    EXPECT_LT(r.seconds, 60.0);
}

TEST(Properties, RandomSessionsReplay) {
    const auto r = run_property_suite(seed_from_env(7), 0, 200);
    expect_ok(r);
    EXPECT_EQ(r.sessions, 200u);
}

TEST(Properties, OtherSeeds) {
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        const auto r = run_property_suite(seed, 150, 20);
        expect_ok(r);
    }
}

}  // namespace
}  // namespace hymap::testing
