#pragma once

#include <optional>
#include <string>

#include "pqmap/curvature.hpp"
#include "pqmap/map.hpp"

namespace pqmap {

struct RenderResult {
    std::string content;
    bool is_svg = false;
    std::string warning;  // set when SVG fell back to DOT
};

// DOT rendering: one node per vertex, one edge line per edge, one comment
// per face; non-flat elements (when pq given) carry the highlight style.
std::string render_dot(const PlanarMap& m, const std::optional<PQParams>& pq);

// Tutte-style straight-line SVG with the boundary pinned to a convex
// polygon; requires a simple boundary.  Falls back to DOT when the layout
// degenerates.
RenderResult render_svg(const PlanarMap& m, const std::optional<PQParams>& pq);

}  // namespace pqmap
