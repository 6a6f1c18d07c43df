// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace hymap::testing {

struct PropertyReport {
    std::size_t maps = 0;
    std::size_t max_nodes_seen = 0;
    std::size_t sessions = 0;
    std::size_t illegal_pairs_rejected = 0;
    std::size_t cycles_injected = 0;
    double seconds = 0;
    /// Property name -> number of checks performed.
    std::map<std::string, std::size_t> checks;
    /// First few failures, "property: detail".
    std::vector<std::string> failures;
    std::size_t failure_count = 0;

    bool ok() const noexcept { return failure_count == 0; }
};

/// Runs every map, layout, hypothesis, registry and session property over
/// `maps` random maps (at most 50 nodes each) and `sessions` random
/// elicitation sessions.
PropertyReport run_property_suite(std::uint64_t seed, std::size_t maps = 1000, std::size_t sessions = 100);

}  // namespace hymap::testing
