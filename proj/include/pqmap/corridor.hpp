#pragma once

#include <vector>

#include "pqmap/curvature.hpp"
#include "pqmap/map.hpp"

namespace pqmap {

// A corridor (e_0, Pi_1, e_1, ..., Pi_t, e_t): consecutive faces share the
// gluing edges, and the two gluing edges of a face are non-adjacent on its
// boundary.  Gluing darts are oriented forward: orbit(gluing[i]) is the
// face after edge i (the outer face for the final dart).  arcs_a[i] and
// arcs_b[i] are the two boundary arcs of faces[i] between its gluing
// edges; side A runs forward, side B backward.
struct Corridor {
    std::vector<DartId> gluing;           // t+1 darts
    std::vector<FaceId> faces;            // t faces
    std::vector<std::vector<DartId>> arcs_a;
    std::vector<std::vector<DartId>> arcs_b;

    [[nodiscard]] int length() const { return static_cast<int>(faces.size()); }
    [[nodiscard]] std::vector<DartId> side_a() const;
    [[nodiscard]] std::vector<DartId> side_b() const;
};

// How non-degree-4 faces pick the successor gluing edge.
enum class CorridorRule {
    Antipodal,  // offset floor(d/2), minimal-dart tie break
};

// Extends maximally in both directions from the given edge until the
// gluing edges lie on the boundary.  Requires a (4,4)-map; asserts that
// neither side passes a vertex twice.
Corridor build_corridor(const PlanarMap& m, EdgeId e,
                        CorridorRule rule = CorridorRule::Antipodal);

Corridor corridor_reversed(const Corridor& c);

struct CollapseResult {
    PlanarMap map;
    std::vector<VertexId> vertex_image;  // old vertex -> new vertex
};

// Excises a corridor of degree-4 faces and zips its sides together.
// The result is again a (4,4)-map (degenerate full collapses may leave a
// map without faces).
CollapseResult collapse_corridor(const PlanarMap& m, const Corridor& c);

// Reroutes the gluing edges from face index t (1-based along the corridor)
// onward so that d(faces[t-1]) drops by exactly 1 and every other face
// degree is unchanged; the final boundary gluing edge is rerouted as well,
// which lengthens the boundary by 1.  The side containing the length->=2
// arc at t is chosen automatically.
PlanarMap reduce_face_degree(const PlanarMap& m, const Corridor& c, int t);

// Splits every face of degree >= 7 by diagonals chosen so that all
// breadth-first distances to the marked vertex o are preserved exactly and
// no pairwise distance grows.
PlanarMap distance_preserving_subdivision(const PlanarMap& m, VertexId o);

}  // namespace pqmap
