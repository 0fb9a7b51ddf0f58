#pragma once

#include <vector>

#include "pqmap/curvature.hpp"
#include "pqmap/map.hpp"

namespace pqmap {

// Rebuilds the map induced by a face subset: selected faces plus their
// edges and vertices, everything else joining the outer region.  Edges on
// no selected face vanish.  Throws when the result is not a valid map
// (disconnected or annular selections).
struct InducedMap {
    PlanarMap map;
    std::vector<VertexId> vertex_to_parent;
    std::vector<EdgeId> edge_to_parent;
    std::vector<FaceId> face_to_parent;
};

InducedMap face_set_to_map(const PlanarMap& m, const std::vector<FaceId>& faces);

// --- adjustment to condition (B) ------------------------------------------

// Splits every face of degree >= 2p by diagonals; each step cuts a d-gon
// into degrees p+1 and d-p+1, touching no vertices.  Deterministic: the
// diagonal runs from the walk start (minimal dart) to offset p.
PlanarMap subdivide_large_faces(const PlanarMap& m, const PQParams& pq);

// Splits every vertex of degree >= 2q into o' (degree q+1) and o''; for an
// exterior vertex the window of moved darts is chosen so that exactly one
// of the two is exterior.
PlanarMap split_large_vertices(const PlanarMap& m, const PQParams& pq);

// Alternates the two until condition (B) holds.
PlanarMap adjust_to_condition_B(const PlanarMap& m, const PQParams& pq);

// --- trimming to condition (D) ---------------------------------------------

struct TrimResult {
    PlanarMap map;
    int removed_faces = 0;
    bool emptied = false;  // all faces were cut away
};

// Cuts away exterior faces of degree < p (dangling edges vanish with
// them) until every face has degree >= p.  Asserts the perimeter and area
// guarantees: |boundary'| <= (p-1) n and Area' >= Area - n.
TrimResult trim_to_condition_D(const PlanarMap& m, const PQParams& pq);

// --- connecting forests and cutting ----------------------------------------

struct ConnectingForest {
    std::vector<EdgeId> edges;               // sorted
    std::vector<std::vector<EdgeId>> trees;  // partition into maximal subtrees
    std::vector<VertexId> anchors;           // per tree, its boundary vertex

    [[nodiscard]] int edge_budget() const { return static_cast<int>(edges.size()); }
};

// Builds a connecting forest by the interior recursion: forests of the
// interior components plus connecting paths of length <= p-1.  Requires a
// (p,q)*-map; asserts D <= (p-1) |boundary|.
ConnectingForest connecting_forest(const PlanarMap& m, const PQParams& pq);

// Cuts the map along one edge with exactly one endpoint on the current
// boundary; the edge doubles into a slit and the perimeter grows by 2.
// Dart and edge ids are stable; the new edge gets the next id.
PlanarMap cut_along_edge(const PlanarMap& m, EdgeId e);

struct CutResult {
    PlanarMap map;
    int cuts = 0;  // perimeter(map) = perimeter(input) + 2 * cuts
};

// Cuts along every forest edge, boundary-first; afterwards every non-flat
// face or vertex is weakly exterior and every interior component is flat.
CutResult cut_along_forest(const PlanarMap& m, const ConnectingForest& forest);

}  // namespace pqmap
