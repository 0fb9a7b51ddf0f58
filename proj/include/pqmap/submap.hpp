#pragma once

#include <vector>

#include "pqmap/curvature.hpp"
#include "pqmap/map.hpp"

namespace pqmap {

// An induced subcomplex: a face subset together with all their edges and
// vertices.  The boundary is traced as closed dart walks in the parent's
// dart space; `simple` means a single boundary walk visiting no vertex
// twice with subcomplex Euler characteristic 1.  Non-simple selections
// (Fig.-1 style boundaries) are represented by multiple walks.
struct Submap {
    const PlanarMap* parent = nullptr;
    std::vector<FaceId> faces;
    std::vector<VertexId> vertices;
    std::vector<EdgeId> edges;
    std::vector<std::vector<DartId>> boundary_walks;
    bool simple = false;

    [[nodiscard]] int boundary_length() const {
        int total = 0;
        for (const auto& walk : boundary_walks) total += static_cast<int>(walk.size());
        return total;
    }
};

Submap extract_submap(const PlanarMap& m, const std::vector<FaceId>& faces);

// Standalone conversion of a simple submap, with mappings back to the
// parent.
struct StandaloneSubmap {
    PlanarMap map;
    std::vector<VertexId> vertex_to_parent;  // by new vertex id
    std::vector<EdgeId> edge_to_parent;      // by new edge id
    std::vector<FaceId> face_to_parent;      // by new bounded face id
};

StandaloneSubmap submap_to_map(const Submap& sub);

// The interior M^0: union of strongly interior faces (faces sharing no
// vertex with the boundary), split into its maximal simple components.
struct InteriorDecomposition {
    std::vector<Submap> components;
    int y_length = 0;  // sum of component boundary lengths
};

InteriorDecomposition interior(const PlanarMap& m);

// Contraction inequality |x| - |y| >= J + p for (p,q)-maps whose every
// face has degree >= p.  Returns the exact slack |x| - |y| - (J + p) and
// throws TheoremViolation when it is negative.
Rational contraction_check(const PlanarMap& m, const PQParams& pq);

struct DefectDistance {
    std::vector<int> distance;  // per vertex, from the defect set
    int r_defect = 0;
};

DefectDistance defect_distance(const PlanarMap& m, const PQParams& pq);

// Ball growth around a vertex: M_0 = {o}, M_{i+1} = closure of the faces
// sharing a vertex with M_i.  A stage passes while the grown submap is
// simple, flat and contains no defect vertex.
struct GrowthStage {
    int stage = 0;
    int face_count = 0;
    int boundary_length = 0;
    int outgoing_darts = 0;  // oriented edges leaving the previous stage
    bool flat_simple = true;
};

std::vector<GrowthStage> flat_ball_growth(const PlanarMap& m, const PQParams& pq, VertexId o);

// Largest radius over all vertices of a flat simple defect-free grown
// ball; the operational witness for "no flat submaps of radius > r".
int flat_ball_radius(const PlanarMap& m, const PQParams& pq);

// Minimal-boundary simple submap containing every face within distance
// <= r-1 of o; requires all face degrees <= 6 and the r-ball of o to
// avoid the boundary.  Postconditions dist(o, boundary) >= r and
// max dist(o, exterior vertex) <= r+2 are asserted.
Submap shell_submap(const PlanarMap& m, VertexId o, int r);

}  // namespace pqmap
