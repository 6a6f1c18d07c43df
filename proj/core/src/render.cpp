// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 HyMap Contributors

#include "hymap/render.hpp"

#include "hymap/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <sstream>
#include <tuple>
#include <unordered_map>

namespace hymap::render {

std::optional<Format> parse_format(std::string_view text) noexcept {
    if (text == "dot") return Format::Dot;
    if (text == "svg") return Format::Svg;
    if (text == "layout" || text == "json") return Format::LayoutJson;
    return std::nullopt;
}

std::string_view dot_shape(NodeKind kind) noexcept {
    switch (kind) {
    case NodeKind::Customer: return "circle";
    case NodeKind::Product: return "ellipse";
    case NodeKind::Feature: return "box";
    case NodeKind::Concept: return "box";
    }
    return "box";
}

std::string_view edge_label(Sign sign) noexcept {
    switch (sign) {
    case Sign::Positive: return "+";
    case Sign::Negative: return "-";
    case Sign::Neutral: return "/o/";
    }
    return "/o/";
}

const PlacedNode& Layout::at(const std::string& id) const {
    auto it = std::find_if(nodes.begin(), nodes.end(), [&](const PlacedNode& p) { return p.node->id == id; });
    if (it == nodes.end()) throw Error(ErrorCode::UnknownId, "node \"" + id + "\" is not in the layout", {id});
    return *it;
}

namespace {

std::string band_role(const LayerAssignment& layers, int band) {
    if (layers.customer_band && band == *layers.customer_band) return "customers";
    if (band == LayerAssignment::kProductLayer) return "product";
    if (band == LayerAssignment::kFeatureLayer) return "features";
    return "problems";
}

std::string fixed(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.1f", v);
    return buf;
}

std::string dot_escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        if (c == '"' || c == '\\') out.push_back('\\');
        if (c == '\n') {
            out += "\\n";
            continue;
        }
        out.push_back(c);
    }
    return out;
}

std::string xml_escape(std::string_view text) {
    std::string out;
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        case '\'': out += "&apos;"; break;
        default: out.push_back(c);
        }
    }
    return out;
}

constexpr const char* kLegend =
    "circle: customer segment | ellipse: product | dashed box: feature | box: concept | "
    "+ increases, - decreases, /o/ does not affect";

}  // namespace

Layout compute_layout(const CognitiveMap& map, Orientation orientation) {
    Layout layout;
    layout.layers = assign_layers(map);
    const int band_count = layout.layers.band_count();
    layout.bands.assign(static_cast<std::size_t>(band_count), {});

    std::unordered_map<std::string, const MapNode*> nodes;
    for (const auto& n : map.nodes()) {
        nodes.emplace(n.id, &n);
        layout.bands[static_cast<std::size_t>(layout.layers.layer(n.id))].push_back(n.id);
    }
    auto label_less = [&](const std::string& a, const std::string& b) {
        const auto* na = nodes.at(a);
        const auto* nb = nodes.at(b);
        return std::tie(na->label, na->kind) < std::tie(nb->label, nb->kind);
    };
    for (auto& band : layout.bands) std::sort(band.begin(), band.end(), label_less);

    std::unordered_map<std::string, std::vector<std::string>> neighbours;
    for (const auto& e : map.edges()) {
        neighbours[e.src].push_back(e.dst);
        neighbours[e.dst].push_back(e.src);
    }
    std::unordered_map<std::string, double> position;
    auto refresh = [&](const std::vector<std::string>& band) {
        for (std::size_t i = 0; i < band.size(); ++i)
            position[band[i]] = (static_cast<double>(i) + 0.5) / static_cast<double>(band.size());
    };
    for (const auto& band : layout.bands) refresh(band);

    auto reorder = [&](int b, bool from_above) {
        auto& band = layout.bands[static_cast<std::size_t>(b)];
        std::unordered_map<std::string, double> bary;
        for (const auto& id : band) {
            double sum = 0;
            int n = 0;
            for (const auto& other : neighbours[id]) {
                const int ob = layout.layers.layer(other);
                if ((from_above && ob < b) || (!from_above && ob > b)) {
                    sum += position[other];
                    ++n;
                }
            }
            bary[id] = n == 0 ? position[id] : sum / n;
        }
        std::stable_sort(band.begin(), band.end(), [&](const std::string& x, const std::string& y) {
            if (bary[x] != bary[y]) return bary[x] < bary[y];
            return label_less(x, y);
        });
        refresh(band);
    };
    for (int sweep = 0; sweep < kCrossingSweeps; ++sweep) {
        if (sweep % 2 == 0) {
            for (int b = 1; b < band_count; ++b) reorder(b, true);
        } else {
            for (int b = band_count - 2; b >= 0; --b) reorder(b, false);
        }
    }

    std::size_t widest = 1;
    for (const auto& band : layout.bands) widest = std::max(widest, band.size());
    layout.width = 2 * kMargin + static_cast<double>(widest) * kNodeSpacing;
    layout.height = 2 * kMargin + static_cast<double>(band_count - 1) * kBandHeight;
    for (int b = 0; b < band_count; ++b) {
        const auto& band = layout.bands[static_cast<std::size_t>(b)];
        const double offset = kMargin + static_cast<double>(widest - band.size()) * kNodeSpacing / 2;
        const int row = orientation == Orientation::ProductTop ? b : band_count - 1 - b;
        for (std::size_t i = 0; i < band.size(); ++i) {
            layout.nodes.push_back({nodes.at(band[i]), b, static_cast<int>(i),
                                    offset + (static_cast<double>(i) + 0.5) * kNodeSpacing,
                                    kMargin + row * kBandHeight});
        }
    }
    return layout;
}

std::size_t count_adjacent_crossings(const CognitiveMap& map, const Layout& layout) {
    std::map<int, std::vector<std::pair<int, int>>> by_gap;
    for (const auto& e : map.edges()) {
        const auto& s = layout.at(e.src);
        const auto& d = layout.at(e.dst);
        if (std::abs(s.band - d.band) != 1) continue;
        const auto& upper = s.band < d.band ? s : d;
        const auto& lower = s.band < d.band ? d : s;
        by_gap[upper.band].emplace_back(upper.order, lower.order);
    }
    std::size_t crossings = 0;
    for (const auto& [gap, segs] : by_gap) {
        for (std::size_t i = 0; i < segs.size(); ++i)
            for (std::size_t j = i + 1; j < segs.size(); ++j) {
                const auto [a1, b1] = segs[i];
                const auto [a2, b2] = segs[j];
                if ((a1 < a2 && b1 > b2) || (a1 > a2 && b1 < b2)) ++crossings;
            }
    }
    return crossings;
}

std::string to_dot(const CognitiveMap& map, const RenderOptions& options) {
    const auto layout = compute_layout(map, options.orientation);
    std::unordered_map<std::string, std::string> name;
    for (std::size_t i = 0; i < layout.nodes.size(); ++i) name[layout.nodes[i].node->id] = "n" + std::to_string(i);

    std::ostringstream out;
    out << "digraph hymap {\n";
    out << "  graph [rankdir=" << (options.orientation == Orientation::ProductTop ? "TB" : "BT")
        << ", nodesep=0.4, ranksep=0.6";
    if (options.legend) out << ", labelloc=b, fontsize=10, label=\"" << dot_escape(kLegend) << "\"";
    out << "];\n";
    out << "  node [fontname=\"Helvetica\"];\n";
    out << "  edge [fontname=\"Helvetica\"];\n";
    for (const auto& p : layout.nodes) {
        out << "  " << name[p.node->id] << " [label=\"" << dot_escape(p.node->label)
            << "\", shape=" << dot_shape(p.node->kind);
        if (p.node->kind == NodeKind::Feature) out << ", style=dashed";
        out << "];\n";
    }
    for (std::size_t b = 0; b < layout.bands.size(); ++b) {
        if (layout.bands[b].empty()) continue;
        out << "  { rank=same;";
        for (const auto& id : layout.bands[b]) out << " " << name[id] << ";";
        out << " }\n";
    }
    struct Row {
        std::size_t src, dst;
        const MapEdge* edge;
    };
    std::vector<Row> rows;
    for (const auto& e : map.edges()) {
        rows.push_back({std::stoul(name[e.src].substr(1)), std::stoul(name[e.dst].substr(1)), &e});
    }
    std::sort(rows.begin(), rows.end(),
              [](const Row& a, const Row& b) { return std::tie(a.src, a.dst) < std::tie(b.src, b.dst); });
    for (const auto& r : rows) {
        out << "  n" << r.src << " -> n" << r.dst;
        if (r.edge->kind == EdgeKind::Influence && r.edge->sign) {
            out << " [label=\"" << edge_label(*r.edge->sign) << "\"]";
        } else if (r.edge->kind == EdgeKind::Perception) {
            // Customers sit in the last band; keep their arrows from pulling ranks.
            out << " [constraint=false]";
        }
        out << ";\n";
    }
    out << "}\n";
    return out.str();
}

std::string to_svg(const CognitiveMap& map, const RenderOptions& options) {
    const auto layout = compute_layout(map, options.orientation);
    const double legend_height = options.legend ? 40.0 : 0.0;
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(layout.width) << "\" height=\""
        << fixed(layout.height + legend_height) << "\" viewBox=\"0 0 " << fixed(layout.width) << " "
        << fixed(layout.height + legend_height) << "\">\n";
    out << "  <defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"8\" "
           "markerHeight=\"8\" orient=\"auto-start-reverse\"><path d=\"M0,0 L10,5 L0,10 z\"/></marker></defs>\n";
    out << "  <style>text{font-family:Helvetica,Arial,sans-serif;font-size:12px}"
           ".node{fill:#fff;stroke:#222;stroke-width:1.5}.edge{stroke:#444;stroke-width:1.2}</style>\n";

    out << "  <g class=\"bands\">\n";
    for (std::size_t b = 0; b < layout.bands.size(); ++b) {
        const int row = options.orientation == Orientation::ProductTop
                            ? static_cast<int>(b)
                            : static_cast<int>(layout.bands.size()) - 1 - static_cast<int>(b);
        out << "    <line class=\"band\" data-band=\"" << b << "\" data-role=\""
            << band_role(layout.layers, static_cast<int>(b)) << "\" x1=\"0\" x2=\"" << fixed(layout.width)
            << "\" y1=\"" << fixed(kMargin + row * kBandHeight) << "\" y2=\"" << fixed(kMargin + row * kBandHeight)
            << "\" stroke=\"#eee\"/>\n";
    }
    out << "  </g>\n";

    std::vector<std::tuple<int, int, int, int, const MapEdge*>> rows;
    for (const auto& e : map.edges()) {
        const auto& s = layout.at(e.src);
        const auto& d = layout.at(e.dst);
        rows.emplace_back(s.band, s.order, d.band, d.order, &e);
    }
    std::sort(rows.begin(), rows.end());
    out << "  <g class=\"edges\">\n";
    for (const auto& row : rows) {
        const auto* e = std::get<4>(row);
        const auto& s = layout.at(e->src);
        const auto& d = layout.at(e->dst);
        const double dx = d.x - s.x;
        const double dy = d.y - s.y;
        const double len = std::max(1.0, std::sqrt(dx * dx + dy * dy));
        const double trim = std::min(34.0, len / 3);
        const double x1 = s.x + dx / len * trim, y1 = s.y + dy / len * trim;
        const double x2 = d.x - dx / len * trim, y2 = d.y - dy / len * trim;
        out << "    <line class=\"edge " << to_string(e->kind) << "\" x1=\"" << fixed(x1) << "\" y1=\"" << fixed(y1)
            << "\" x2=\"" << fixed(x2) << "\" y2=\"" << fixed(y2) << "\" marker-end=\"url(#arrow)\"/>\n";
        if (e->kind == EdgeKind::Influence && e->sign) {
            out << "    <text class=\"sign\" x=\"" << fixed((x1 + x2) / 2 + 6) << "\" y=\"" << fixed((y1 + y2) / 2)
                << "\">" << xml_escape(edge_label(*e->sign)) << "</text>\n";
        }
    }
    out << "  </g>\n";

    out << "  <g class=\"nodes\">\n";
    for (const auto& p : layout.nodes) {
        const auto x = fixed(p.x);
        const auto y = fixed(p.y);
        out << "    <g class=\"node-" << to_string(p.node->kind) << "\" data-band=\"" << p.band << "\">";
        switch (p.node->kind) {
        case NodeKind::Customer:
            out << "<circle class=\"node\" cx=\"" << x << "\" cy=\"" << y << "\" r=\"34\"/>";
            break;
        case NodeKind::Product:
            out << "<ellipse class=\"node\" cx=\"" << x << "\" cy=\"" << y << "\" rx=\"95\" ry=\"28\"/>";
            break;
        case NodeKind::Feature:
        case NodeKind::Concept:
            out << "<rect class=\"node\" x=\"" << fixed(p.x - 95) << "\" y=\"" << fixed(p.y - 24)
                << "\" width=\"190\" height=\"48\"";
            if (p.node->kind == NodeKind::Feature) out << " stroke-dasharray=\"6,4\"";
            out << "/>";
            break;
        }
        out << "<text x=\"" << x << "\" y=\"" << fixed(p.y + 4) << "\" text-anchor=\"middle\">"
            << xml_escape(p.node->label) << "</text></g>\n";
    }
    out << "  </g>\n";
    if (options.legend) {
        out << "  <text class=\"legend\" x=\"" << fixed(kMargin / 2) << "\" y=\""
            << fixed(layout.height + legend_height / 2) << "\">" << xml_escape(kLegend) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

nlohmann::json layout_json(const CognitiveMap& map, const RenderOptions& options) {
    const auto layout = compute_layout(map, options.orientation);
    nlohmann::json bands = nlohmann::json::array();
    for (std::size_t b = 0; b < layout.bands.size(); ++b) {
        const int row = options.orientation == Orientation::ProductTop
                            ? static_cast<int>(b)
                            : static_cast<int>(layout.bands.size()) - 1 - static_cast<int>(b);
        bands.push_back({{"index", b},
                         {"role", band_role(layout.layers, static_cast<int>(b))},
                         {"y", kMargin + row * kBandHeight},
                         {"nodes", layout.bands[b]}});
    }
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& p : layout.nodes) {
        nodes.push_back({{"id", p.node->id},
                         {"kind", to_string(p.node->kind)},
                         {"label", p.node->label},
                         {"band", p.band},
                         {"order", p.order},
                         {"x", p.x},
                         {"y", p.y}});
    }
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : map.edges()) {
        edges.push_back({{"id", e.id},
                         {"src", e.src},
                         {"dst", e.dst},
                         {"kind", to_string(e.kind)},
                         {"sign", e.sign ? nlohmann::json(symbol(*e.sign)) : nlohmann::json()},
                         {"label", e.sign ? nlohmann::json(edge_label(*e.sign)) : nlohmann::json()},
                         {"saturated", e.saturated}});
    }
    return {{"version", kLayoutSchemaVersion},
            {"orientation", options.orientation == Orientation::ProductTop ? "product-top" : "product-bottom"},
            {"band_height", kBandHeight},
            {"node_spacing", kNodeSpacing},
            {"width", layout.width},
            {"height", layout.height},
            {"bands", std::move(bands)},
            {"nodes", std::move(nodes)},
            {"edges", std::move(edges)}};
}

std::string render(const CognitiveMap& map, const RenderOptions& options) {
    switch (options.format) {
    case Format::Dot: return to_dot(map, options);
    case Format::Svg: return to_svg(map, options);
    case Format::LayoutJson: return layout_json(map, options).dump(2) + "\n";
    }
    return {};
}

}  // namespace hymap::render
