// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#pragma once

#include "hymap/analysis.hpp"
#include "hymap/model.hpp"

#include <nlohmann/json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace hymap::render {

enum class Format { Dot, Svg, LayoutJson };
enum class Orientation { ProductTop, ProductBottom };

std::optional<Format> parse_format(std::string_view text) noexcept;

struct RenderOptions {
    Format format = Format::Dot;
    Orientation orientation = Orientation::ProductTop;
    bool legend = true;
};

inline constexpr double kBandHeight = 120.0;
inline constexpr double kNodeSpacing = 220.0;
inline constexpr double kMargin = 60.0;
inline constexpr int kCrossingSweeps = 3;
inline constexpr int kLayoutSchemaVersion = 1;

struct PlacedNode {
    const MapNode* node = nullptr;
    int band = 0;
    int order = 0;
    double x = 0;
    double y = 0;
};

/// Band placement from assign_layers plus a within-band order chosen by
/// barycenter crossing reduction (down, up, down sweeps; ties by label).
struct Layout {
    LayerAssignment layers;
    /// Node ids per band, in final left-to-right order.
    std::vector<std::vector<std::string>> bands;
    /// Every node once, band by band, left to right.
    std::vector<PlacedNode> nodes;
    double width = 0;
    double height = 0;

    const PlacedNode& at(const std::string& id) const;
};

/// Throws Error(InvalidMap) for maps with validation errors.
Layout compute_layout(const CognitiveMap& map, Orientation orientation = Orientation::ProductTop);

/// Edge crossings between consecutive bands (edges spanning more bands are
/// ignored).
std::size_t count_adjacent_crossings(const CognitiveMap& map, const Layout& layout);

/// customer: circle, product: ellipse, feature: box + dashed, concept: box.
std::string_view dot_shape(NodeKind kind) noexcept;
/// "+", "-" or "/o/".
std::string_view edge_label(Sign sign) noexcept;

std::string to_dot(const CognitiveMap& map, const RenderOptions& options = {});
std::string to_svg(const CognitiveMap& map, const RenderOptions& options = {});
nlohmann::json layout_json(const CognitiveMap& map, const RenderOptions& options = {});

/// Dispatches on options.format.
std::string render(const CognitiveMap& map, const RenderOptions& options);

}  // namespace hymap::render
